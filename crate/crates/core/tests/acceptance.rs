//! Acceptance gate: one timed criterion per test, each printing a single
//! pass/fail line. Every check is an exact integer identity — tolerance zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

use ssred_core::cyclotomic::{
    algprop_check, check_quasithm, euler_phi, primroot_unit_check, r_of, CycloElt,
};
use ssred_core::lattice::OperatorLattice;
use ssred_core::linalg::{IntMatrix, IntPoly};
use ssred_core::scenarios::{
    ellcor_kernel_bound, elliptic_degree_decision, padd_decision, run_example, ExampleId,
    PaddCase,
};
use ssred_core::torsion::{all_submodules, enumerate_sp2, random_symplectic, Side, TorsionPairData};
use ssred_core::verify::{random_quasiunipotent, run_all};

fn report(idx: u32, name: &str, ok: bool, elapsed: Duration, budget: Duration) {
    let within = elapsed <= budget;
    let verdict = if ok && within { "pass" } else { "fail" };
    println!(
        "acceptance {idx} ({name}): {verdict} [{:.2?} of {:.0?} budget]",
        elapsed, budget
    );
    assert!(ok, "acceptance {idx} ({name}): checks failed");
    assert!(
        within,
        "acceptance {idx} ({name}): over budget ({elapsed:?} > {budget:?})"
    );
}

fn prime_powers_upto(bound: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for ell in 2..=bound {
        if !(2..ell).all(|k| ell % k != 0) {
            continue;
        }
        let mut q = ell;
        let mut s = 1u32;
        while q <= bound {
            out.push((ell, s));
            q *= ell;
            s += 1;
        }
    }
    out
}

#[test]
fn acceptance_1_r_table_and_sharpness() {
    let start = Instant::now();
    let mut ok = true;

    ok &= r_of(2).unwrap() == 4 && r_of(3).unwrap() == 3 && r_of(4).unwrap() == 2;
    ok &= (5..=24).all(|n| r_of(n).unwrap() == 1);
    ok &= r_of(0).is_err() && r_of(1).is_err();

    // sharpness witnesses: a root of unity of exact order R(n) that passes
    // the hypothesis at level n, so no smaller exponent can work
    for (n, m) in [(2u64, 4u64), (3, 3), (4, 2)] {
        let r = r_of(n).unwrap();
        let alpha = CycloElt::root_of_unity(m, 1);
        ok &= alpha.multiplicative_order() == Some(r);
        let v = check_quasithm(m, 1, n).unwrap();
        ok &= v.hypothesis_holds && v.conclusion_holds;
    }

    report(1, "r-table and sharpness", ok, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn acceptance_2_integrality_sweep() {
    let start = Instant::now();
    let mut ok = true;
    let mut checks = 0u64;
    for n in 2u64..=12 {
        for m in 1u64..=60 {
            for j in 0..m {
                let v = check_quasithm(m, j, n).unwrap();
                ok &= !(v.hypothesis_holds && !v.conclusion_holds);
                checks += 1;
            }
        }
    }
    ok &= checks == 11 * (1..=60u64).sum::<u64>();
    report(2, "integrality sweep n<=12 m<=60", ok, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn acceptance_3_unit_and_divisibility_lemmas() {
    let start = Instant::now();
    let mut ok = true;
    for (ell, s) in prime_powers_upto(64) {
        ok &= primroot_unit_check(ell, s).unwrap_or(false);
    }
    for (ell, r) in prime_powers_upto(27) {
        let q = ell.pow(r);
        let phi = euler_phi(q);
        for k in 1..=12u64 {
            for mexp in 1..=12u32 {
                if (mexp as u64) * phi <= k {
                    for j in 0..q {
                        ok &= algprop_check(ell, r, k, mexp, j).unwrap_or(false);
                    }
                }
            }
        }
    }
    report(3, "unit and divisibility lemmas", ok, start.elapsed(), Duration::from_secs(30));
}

fn pair_holds(pair: &TorsionPairData) -> bool {
    let v = pair.sslem_equivalence();
    if v.hyp != v.concl {
        return false;
    }
    if !pair.counting_identities().ok() {
        return false;
    }
    let s = pair.fixed_submodule(Side::X, 1);
    let v = pair.ssprelem_check(&s, 1);
    !(v.hyp && !v.concl)
}

#[test]
fn acceptance_4_symplectic_brute_force() {
    let start = Instant::now();
    let mut ok = true;

    for (n, expected) in [(2u64, 6usize), (3, 24), (4, 48)] {
        let pool = enumerate_sp2(n);
        ok &= pool.len() == expected;
        for g in pool {
            let pair = TorsionPairData::standard_principal(n, 1, g).unwrap();
            ok &= pair_holds(&pair);
            for s in all_submodules(n, 2) {
                let v = pair.ssprelem_check(&s, 1);
                ok &= !(v.hyp && !v.concl);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in [2u64, 3] {
        for _ in 0..10_000 {
            let g = random_symplectic(n, 2, &mut rng);
            let pair = TorsionPairData::standard_principal(n, 2, g).unwrap();
            ok &= pair_holds(&pair);
        }
    }

    report(4, "symplectic brute force", ok, start.elapsed(), Duration::from_secs(300));
}

#[test]
fn acceptance_5_saturation_corpus() {
    let start = Instant::now();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in [2u64, 3, 4] {
        let r = r_of(n).unwrap();
        let nb = BigInt::from(n);
        for case in 0..1000usize {
            let d = 1 + case % 3;
            let t = (case % 2) as u32;
            let gamma0 = random_quasiunipotent(n, d, &mut rng);
            let lat = OperatorLattice::with_standard_basis(n, d, t, gamma0).unwrap();
            let (t_lat, _quot) = lat.saturate().unwrap();
            let t0 = lat.lattice().clone();
            // containments: n^(R-1) T <= T0 <= T
            let scaled = t_lat.scale(&BigRational::from(nb.pow(r as u32 - 1)));
            ok &= t0.contains(&scaled) && t_lat.contains(&t0);
            // lambda-stability of T
            ok &= lat.minimality_check(&t_lat, &t_lat).unwrap_or(false);
            // minimality against the independent fixed-point oracle
            ok &= lat.fixed_point_closure().map(|c| c == t_lat).unwrap_or(false);
            // (e)/(f)/(g) equivalences
            ok &= lat.efg_equivalences(&t_lat).map(|r| r.consistent()).unwrap_or(false);
        }
    }
    report(5, "saturation corpus", ok, start.elapsed(), Duration::from_secs(300));
}

#[test]
fn acceptance_6_example_certificates() {
    let start = Instant::now();
    let mut ok = true;

    for id in [ExampleId::ExN2, ExampleId::ExN3, ExampleId::ExN4] {
        let cert = run_example(id);
        ok &= !cert.falsified();
        let has = |needle: &str| cert.facts.iter().any(|f| f.name.contains(needle) && f.holds);
        ok &= has(&format!("(tau-1)^2 X_{} != 0", cert.n));
        ok &= has(&format!("(tau-1)^2 Y_{} = 0", cert.n));
        ok &= has("stable under gamma");
    }
    for (id, exponent) in [
        (ExampleId::SharpN2, 8u64),
        (ExampleId::SharpN3, 9),
        (ExampleId::SharpN4, 4),
        (ExampleId::SharpD3N2, 4),
    ] {
        let cert = run_example(id);
        ok &= !cert.falsified();
        ok &= cert.kernel_exponent == BigInt::from(exponent);
    }

    report(6, "example certificates", ok, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn acceptance_7_kernel_bounds() {
    let start = Instant::now();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (d, n) in [(1usize, 2u64), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)] {
        let bound = BigInt::from(ellcor_kernel_bound(d, n).unwrap());
        let id = IntMatrix::identity(2 * d);
        let nb = BigInt::from(n);
        for _ in 0..100 {
            // corpus restricted to the level-n hypothesis (gamma-1)^2 = 0 mod n
            let gamma0 = loop {
                let g = random_quasiunipotent(n, d, &mut rng);
                let gm1 = g.sub(&id);
                if gm1.mul(&gm1).divisible_by(&nb) {
                    break g;
                }
            };
            let lat = OperatorLattice::with_standard_basis(n, d, 0, gamma0).unwrap();
            let (t_lat, quot) = lat.saturate().unwrap();
            ok &= quot.exponent <= bound;
            if d == 1 {
                ok &= t_lat == *lat.lattice();
            }
        }
    }
    report(7, "kernel bounds per dimension", ok, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn acceptance_8_decision_examples() {
    let start = Instant::now();
    let mut ok = true;

    let id2 = IntMatrix::identity(2);
    ok &= elliptic_degree_decision(&id2, &id2).unwrap().class.as_str() == "1";
    ok &= elliptic_degree_decision(&id2.neg(), &id2).unwrap().class.as_str() == "2";
    let g4 = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
    let g3 = IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
    ok &= elliptic_degree_decision(&g4, &g3).unwrap().class.as_str() == ">=6";

    for (gamma, case, flag) in [
        (id2.neg(), PaddCase::QuadraticGood, false),
        (IntPoly::from_i64(&[1, 1, 1]).companion(), PaddCase::CubicGood, false),
        (
            IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]),
            PaddCase::QuarticViaQuadratic,
            true,
        ),
    ] {
        let v = padd_decision(&gamma, case, flag).unwrap();
        ok &= v.relation_holds && v.squared_vanishes_at_level;
        ok &= !(v.s_exists.hyp && !v.s_exists.concl);
    }

    report(8, "decision examples", ok, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn acceptance_9_determinism() {
    let start = Instant::now();
    let a = run_all(42, 1);
    let b = run_all(42, 4);
    let c = run_all(42, 4);
    let ok = a.machine_block() == b.machine_block()
        && b.machine_block() == c.machine_block()
        && a.total_exceptions() == 0
        && a.total_checks() >= 100_000;
    report(9, "determinism across runs and shards", ok, start.elapsed(), Duration::from_secs(600));
}
