//! The acceptance gate: one pass/fail line per criterion, all driven by
//! the verification suites over shared orbit catalogs.

use gfq_core::enumerate::{enumerate_matroids, OrbitCatalog};
use gfq_core::make_field;
use gfq_core::verify::{
    verify_bose, verify_fields, verify_lemma6, verify_lemmas_misc, verify_nq_equals_rq,
    verify_theorem3, verify_theorem4, SuiteReport,
};

/// No counterexample carries one of the given check labels.
fn clean(report: &SuiteReport, labels: &[&str]) -> bool {
    !report
        .counterexamples
        .iter()
        .any(|c| labels.contains(&c.expected.as_str()))
}

#[test]
fn acceptance() {
    let f2 = make_field(2).unwrap();
    let f3 = make_field(3).unwrap();
    let mut catalogs: Vec<OrbitCatalog> = Vec::new();
    for r in 1..=4 {
        catalogs.push(enumerate_matroids(r, &f2, true).unwrap());
    }
    for r in 1..=3 {
        catalogs.push(enumerate_matroids(r, &f3, true).unwrap());
    }
    let cache = Some(catalogs.as_slice());

    let fields = verify_fields().unwrap();
    let bose = verify_bose().unwrap();
    let theorem3 = verify_theorem3(cache).unwrap();
    let theorem4_q3 = verify_theorem4(3, cache, 0, 0).unwrap();
    let theorem4_q4 = verify_theorem4(4, cache, 0, 10_000).unwrap();
    let lemma6 = verify_lemma6(cache).unwrap();
    let nq_rq = verify_nq_equals_rq(cache).unwrap();
    let misc = verify_lemmas_misc(cache, 0).unwrap();

    let criteria: Vec<(&str, bool)> = vec![
        (
            "binary rank<=4 exhaustive: deciders agree and the minimal non-members are M(K4) and U(3,4)",
            theorem3.pass,
        ),
        (
            "GF(3) rank<=3 exhaustive: deciders agree, U(2,3) is the only representable minimal non-member, and no 5-arc realizes U(3,5)",
            theorem4_q3.pass,
        ),
        (
            "GF(4) sampled (10^4 seeded subsets of PG(2,4)): deciders agree and the hyperoval U(3,6) is a non-member with no forbidden line",
            theorem4_q4.pass,
        ),
        (
            "rank identity r(F) = r(F n E1) + r(F n E2) - r(F n N) on every flat of 100 seeded random parallel connections",
            clean(&misc, &["flats family and rank identity hold"]),
        ),
        (
            "binary rank<=4: all single-element contractions projective iff the matroid is P_r minus a flat",
            lemma6.pass,
        ),
        (
            "each P_r minus P_{r-i} for r in {3,4} has a flat isomorphic to M(K4) or U(3,4)",
            clean(&misc, &["a flat isomorphic to M(K4) or U(3,4)"]),
        ),
        (
            "binary rank<=4: the minimal-divider definition of N_2 matches the round-leaf decomposition",
            nq_rq.pass,
        ),
        (
            "binary rank<=4: circuit-chordal iff no U(3,4) induced minor, and every member is circuit-chordal",
            clean(
                &misc,
                &[
                    "circuit-chordal iff no U(3,4) induced minor",
                    "member is circuit-chordal",
                ],
            ),
        ),
        (
            "membership is closed under flat restrictions and single-element contraction-simplifications",
            clean(
                &misc,
                &[
                    "flat restriction of a member is a member",
                    "contraction of a member is a member",
                ],
            ),
        ),
        (
            "induced-minor normal form {si(M/C)|G} equals the breadth-first closure for members with <= 9 elements",
            clean(&misc, &["breadth-first induced minors equal the normal form"]),
        ),
        (
            "every exhaustively discovered minimal non-member is round, except the 4-element binary circuit whose separations all have empty glue",
            clean(
                &theorem3,
                &[
                    "minimal non-member is round",
                    "known non-round minimal non-member with empty separation glue",
                ],
            ) && clean(
                &theorem4_q3,
                &[
                    "minimal non-member is round",
                    "known non-round minimal non-member with empty separation glue",
                ],
            ),
        ),
        (
            "hyperovals exist for q in {2,4,8}, are rejected for odd q, and no 5-arc exists in PG(2,3)",
            bose.pass,
        ),
        (
            "field axioms hold exhaustively for every supported order",
            fields.pass,
        ),
    ];

    let mut all = true;
    for (desc, ok) in &criteria {
        println!("{}: {desc}", if *ok { "PASS" } else { "FAIL" });
        all &= ok;
    }
    for report in [
        &fields,
        &bose,
        &theorem3,
        &theorem4_q3,
        &theorem4_q4,
        &lemma6,
        &nq_rq,
        &misc,
    ] {
        assert!(
            report.pass,
            "suite {} failed: {:?}",
            report.suite,
            report
                .counterexamples
                .first()
                .map(|c| (&c.expected, &c.got))
        );
    }
    assert!(all, "an acceptance criterion failed");
}
