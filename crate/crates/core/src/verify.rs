//! Seeded property-verification suites over every module, with deterministic
//! sharding: each case derives its RNG from (seed, suite, case index), so the
//! totals are identical for any shard count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{
    algprop_check, check_quasithm, euler_phi, localglobal_check, primroot_unit_check, r_of,
    CycloElt,
};
use crate::lattice::OperatorLattice;
use crate::linalg::{charpoly, hnf, minpoly, snf, IntMatrix, IntPoly};
use crate::scenarios::{
    elliptic_degree_decision, ellcor_kernel_bound, padd_decision, run_example, ExampleId, PaddCase,
};
use crate::torsion::{all_submodules, enumerate_sp2, random_symplectic, Side, TorsionPairData};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: u64,
    pub checks: u64,
    pub exceptions: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn total_checks(&self) -> u64 {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn total_exceptions(&self) -> u64 {
        self.suites.iter().map(|s| s.exceptions.len() as u64).sum()
    }

    /// Stable machine block: independent of shard count and byte-identical
    /// across runs with the same seed.
    pub fn machine_block(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("seed: {}\n", self.seed));
        for s in &self.suites {
            out.push_str(&format!(
                "suite: {} cases: {} checks: {} exceptions: {}\n",
                s.name,
                s.cases,
                s.checks,
                s.exceptions.len()
            ));
            for e in &s.exceptions {
                out.push_str(&format!("exception: {} :: {}\n", s.name, e));
            }
        }
        out.push_str(&format!("total_checks: {}\n", self.total_checks()));
        out.push_str(&format!("total_exceptions: {}\n", self.total_exceptions()));
        out
    }
}

#[derive(Default)]
struct CaseOutcome {
    checks: u64,
    exceptions: Vec<String>,
}

impl CaseOutcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.exceptions.push(msg());
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

fn case_rng(seed: u64, suite: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ (suite << 48)) ^ case))
}

struct Suite {
    name: &'static str,
    id: u64,
    cases: u64,
    run: Box<dyn Fn(u64, &mut ChaCha8Rng) -> CaseOutcome + Sync>,
}

/// Random unimodular conjugate of a block-diagonal product of companion
/// matrices of divisors of (x^R - 1)^2, of total degree 2d: a generic valid
/// quasi-unipotent operator at level n.
pub fn random_quasiunipotent(n: u64, d: usize, rng: &mut impl Rng) -> IntMatrix {
    let r = r_of(n).expect("valid n");
    // cyclotomic factors of x^R - 1
    let factors: Vec<IntPoly> = (1..=r)
        .filter(|k| r % k == 0)
        .map(crate::cyclotomic::cyclotomic_polynomial)
        .collect();
    let target = 2 * d;
    let mut blocks: Vec<IntMatrix> = Vec::new();
    let mut deg = 0usize;
    while deg < target {
        // one block: a random nontrivial divisor of (x^R - 1)^2 that fits
        let mut f = IntPoly::one();
        for p in &factors {
            let e = rng.gen_range(0..=2u32);
            for _ in 0..e {
                f = f.mul(p);
            }
        }
        let bd = f.degree() as usize;
        if bd == 0 || deg + bd > target {
            continue;
        }
        blocks.push(f.companion());
        deg += bd;
    }
    let dim = target;
    let mut b = IntMatrix::zero(dim, dim);
    let mut off = 0;
    for blk in &blocks {
        for i in 0..blk.rows {
            for j in 0..blk.cols {
                b.set(off + i, off + j, blk.get(i, j).clone());
            }
        }
        off += blk.rows;
    }
    // conjugate by a random unimodular P = L * U (unit triangular factors
    // have integral inverses)
    let mut p = IntMatrix::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            if i > j {
                p.set(i, j, BigInt::from(rng.gen_range(-2i64..=2)));
            }
        }
    }
    let mut u = IntMatrix::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            if i < j {
                u.set(i, j, BigInt::from(rng.gen_range(-2i64..=2)));
            }
        }
    }
    let p = p.mul(&u);
    let p_inv = p.to_rat().inverse().expect("unimodular");
    p.to_rat().mul(&b.to_rat()).mul(&p_inv).to_int().expect("integral conjugate")
}

fn random_int_matrix(dim: usize, bound: i64, rng: &mut impl Rng) -> IntMatrix {
    IntMatrix::from_fn(dim, dim, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

fn suite_linalg() -> Suite {
    Suite {
        name: "linalg-forms",
        id: 1,
        cases: 200,
        run: Box::new(|case, rng| {
            let mut out = CaseOutcome::default();
            let dim = 1 + (case as usize % 6);
            let m = random_int_matrix(dim, 9, rng);
            let (h, _u) = hnf(&m);
            let (h2, _) = hnf(&h);
            out.check(h2 == h, || format!("hnf not idempotent on case {case}"));
            let det = m.det();
            if !det.is_zero() {
                out.check(h.det().abs() == det.abs(), || {
                    format!("hnf changed |det| on case {case}")
                });
            }
            let divs = snf(&m);
            out.check(
                divs.windows(2)
                    .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())),
                || format!("snf divisibility chain broken on case {case}"),
            );
            let cp = charpoly(&m);
            out.check(cp.eval_matrix(&m).is_zero(), || {
                format!("Cayley-Hamilton failed on case {case}")
            });
            let mp = minpoly(&m);
            out.check(mp.divides(&cp), || {
                format!("minpoly does not divide charpoly on case {case}")
            });
            out
        }),
    }
}

fn suite_quasithm() -> Suite {
    // cases: (n, m) pairs for n in 2..=12, m in 1..=60, plus 3 sharpness
    // witnesses
    let grid: Vec<(u64, u64)> = (2u64..=12).flat_map(|n| (1u64..=60).map(move |m| (n, m))).collect();
    let total = grid.len() as u64 + 3;
    Suite {
        name: "cyclotomic-quasithm",
        id: 2,
        cases: total,
        run: Box::new(move |case, _rng| {
            let mut out = CaseOutcome::default();
            if (case as usize) < grid.len() {
                let (n, m) = grid[case as usize];
                for j in 0..m {
                    let v = check_quasithm(m, j, n).expect("valid parameters");
                    out.check(!v.hypothesis_holds || v.conclusion_holds, || {
                        format!("hypothesis without conclusion at m={m}, j={j}, n={n}")
                    });
                }
            } else {
                // sharpness: a root of unity of exact order R(n) passing the
                // hypothesis, so no smaller exponent than R(n) suffices
                let (n, m, j) = match case as usize - grid.len() {
                    0 => (2u64, 4u64, 1u64),
                    1 => (3, 3, 1),
                    _ => (4, 2, 1),
                };
                let v = check_quasithm(m, j, n).expect("valid parameters");
                let order = CycloElt::root_of_unity(m, j).multiplicative_order();
                out.check(
                    v.hypothesis_holds && order == Some(r_of(n).unwrap()),
                    || format!("sharpness witness missing for n={n}"),
                );
            }
            out
        }),
    }
}

fn prime_powers_upto(bound: u64) -> Vec<(u64, u32)> {
    let mut v = Vec::new();
    for ell in 2..=bound {
        if (2..ell).all(|k| ell % k != 0) {
            let mut q = ell;
            let mut s = 1;
            while q <= bound {
                v.push((ell, s));
                q *= ell;
                s += 1;
            }
        }
    }
    v
}

fn suite_primroot() -> Suite {
    let params = prime_powers_upto(64);
    Suite {
        name: "cyclotomic-primroot",
        id: 3,
        cases: params.len() as u64,
        run: Box::new(move |case, _rng| {
            let mut out = CaseOutcome::default();
            let (ell, s) = params[case as usize];
            out.check(primroot_unit_check(ell, s).unwrap_or(false), || {
                format!("primroot unit check failed at {ell}^{s}")
            });
            out
        }),
    }
}

fn suite_algprop() -> Suite {
    // full valid lattice with l^r <= 27 and k <= 12
    let mut params = Vec::new();
    for (ell, r) in prime_powers_upto(27) {
        let q = ell.pow(r);
        let phi = euler_phi(q);
        for k in 1..=12u64 {
            for mexp in 1..=12u32 {
                if (mexp as u64) * phi <= k {
                    params.push((ell, r, k, mexp));
                }
            }
        }
    }
    Suite {
        name: "cyclotomic-algprop",
        id: 4,
        cases: params.len() as u64,
        run: Box::new(move |case, _rng| {
            let mut out = CaseOutcome::default();
            let (ell, r, k, mexp) = params[case as usize];
            for j in 0..ell.pow(r) {
                out.check(
                    algprop_check(ell, r, k, mexp, j).unwrap_or(false),
                    || format!("algprop failed at l={ell}, r={r}, k={k}, mexp={mexp}, j={j}"),
                );
            }
            out
        }),
    }
}

fn suite_localglobal() -> Suite {
    Suite {
        name: "cyclotomic-localglobal",
        id: 5,
        cases: 500,
        run: Box::new(|case, rng| {
            let mut out = CaseOutcome::default();
            let n = [2u64, 3, 4][case as usize % 3];
            let dim = 2 + (case as usize % 2);
            // A = 1 + c*v*w^T with w.v = 0 mod n, so (A-1)^2 = 0 mod n
            let nb = BigInt::from(n);
            let (v, w) = loop {
                let v: Vec<BigInt> =
                    (0..dim).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
                let w: Vec<BigInt> =
                    (0..dim).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
                let dot: BigInt = v.iter().zip(&w).map(|(a, b)| a * b).sum();
                if dot.mod_floor(&nb).is_zero() {
                    break (v, w);
                }
            };
            let c = BigInt::from(rng.gen_range(1i64..=3));
            let a = IntMatrix::from_fn(dim, dim, |i, j| {
                let e = &c * &v[i] * &w[j];
                if i == j {
                    e + BigInt::one()
                } else {
                    e
                }
            });
            let verdict = localglobal_check(&[a], n).expect("valid level");
            out.check(verdict.hypotheses, || {
                format!("constructed matrix rejected on case {case} (n={n})")
            });
            out.check(verdict.integral_witness.is_some(), || {
                format!("no integral witness on case {case} (n={n})")
            });
            out
        }),
    }
}

fn pair_case(pair: &TorsionPairData, n: u64, out: &mut CaseOutcome, label: &str) {
    let v = pair.sslem_equivalence();
    out.check(v.hyp == v.concl, || format!("sslem sides disagree: {label}"));
    let rep = pair.counting_identities();
    out.check(rep.ok(), || {
        format!("counting identities failed: {label}: {:?}", rep.failures)
    });
    let s = pair.fixed_submodule(Side::X, 1);
    let v = pair.ssprelem_check(&s, 1);
    out.check(!(v.hyp && !v.concl), || format!("ssprelem violated: {label}"));
    let sperp = pair.orthogonal_complement(&s);
    let back = pair.orthogonal_complement_star(&sperp);
    out.check(
        back.basis() == s.basis(),
        || format!("double complement not identity: {label} (n={n})"),
    );
}

fn suite_sp2_exhaustive() -> Suite {
    let cases: Vec<(u64, IntMatrix)> = [2u64, 3, 4]
        .iter()
        .flat_map(|&n| enumerate_sp2(n).into_iter().map(move |g| (n, g)))
        .collect();
    Suite {
        name: "torsion-sp2-exhaustive",
        id: 6,
        cases: cases.len() as u64,
        run: Box::new(move |case, _rng| {
            let mut out = CaseOutcome::default();
            let (n, g) = &cases[case as usize];
            let n = *n;
            let pair = TorsionPairData::standard_principal(n, 1, g.clone()).expect("SL2 element");
            pair_case(&pair, n, &mut out, &format!("sp2 n={n} case={case}"));
            // every submodule, not just the fixed one
            for s in all_submodules(n, 2) {
                let v = pair.ssprelem_check(&s, 1);
                out.check(!(v.hyp && !v.concl), || {
                    format!("ssprelem violated at n={n} case={case}")
                });
            }
            // independent restatement: some S with trivial action on S and
            // S-perp exists iff (gamma-1)^2 = 0, by exhaustive search
            let exists = all_submodules(n, 2).into_iter().any(|s| {
                let sperp = pair.orthogonal_complement(&s);
                pair.kills(Side::X, 1, &s) && pair.kills(Side::XStar, 1, &sperp)
            });
            let vanishes = pair.squared_difference_vanishes(Side::X, 1);
            out.check(exists == vanishes, || {
                format!("existence search disagrees with vanishing at n={n} case={case}")
            });
            out
        }),
    }
}

fn suite_sp4_sampled() -> Suite {
    Suite {
        name: "torsion-sp4-sampled",
        id: 7,
        cases: 20_000,
        run: Box::new(|case, rng| {
            let mut out = CaseOutcome::default();
            let n = if case < 10_000 { 2 } else { 3 };
            let g = random_symplectic(n, 2, rng);
            let pair = TorsionPairData::standard_principal(n, 2, g).expect("sampled element");
            pair_case(&pair, n, &mut out, &format!("sp4 n={n} case={case}"));
            out
        }),
    }
}

fn lattice_case(n: u64, d: usize, t: u32, gamma0: IntMatrix, out: &mut CaseOutcome, label: &str) {
    let lat = match OperatorLattice::with_standard_basis(n, d, t, gamma0) {
        Ok(l) => l,
        Err(e) => {
            out.checks += 1;
            out.exceptions.push(format!("{label}: construction failed: {e}"));
            return;
        }
    };
    let r = lat.r();
    let nb = BigInt::from(n);
    let (t_lat, quot) = match lat.saturate() {
        Ok(x) => x,
        Err(e) => {
            out.checks += 1;
            out.exceptions.push(format!("{label}: saturation failed: {e}"));
            return;
        }
    };
    let t0 = lat.lattice().clone();
    // containment chain n^(R-1) T <= T0 <= T
    let scaled = t_lat.scale(&BigRational::from(nb.pow(r as u32 - 1)));
    out.check(t0.contains(&scaled) && t_lat.contains(&t0), || {
        format!("{label}: containment chain broken")
    });
    // (gamma - 1)^{2R} T0 <= n T0
    let gamma = lat.gamma();
    let gm1 = gamma.sub(&IntMatrix::identity(2 * d));
    out.check(gm1.pow(2 * r).divisible_by(&nb), || {
        format!("{label}: (gamma-1)^2R not divisible by n")
    });
    // lambda-stability of T (probe = T itself)
    match lat.minimality_check(&t_lat, &t_lat) {
        Ok(ok) => out.check(ok, || format!("{label}: T not contained in itself")),
        Err(e) => out.check(false, || format!("{label}: T not lambda-stable: {e}")),
    }
    // idempotence: re-saturating from T returns T
    match OperatorLattice::new(n, d, t, lat.gamma0().clone(), t_lat.clone())
        .and_then(|l2| l2.saturate())
    {
        Ok((t2, q2)) => {
            out.check(t2 == t_lat, || format!("{label}: saturation not idempotent"));
            out.check(q2.is_trivial(), || {
                format!("{label}: re-saturation has nontrivial quotient")
            });
        }
        Err(e) => out.check(false, || format!("{label}: re-saturation failed: {e}")),
    }
    // minimality against the independent fixed-point-closure oracle
    match lat.fixed_point_closure() {
        Ok(closure) => out.check(closure == t_lat, || {
            format!("{label}: fixed-point closure differs from saturation")
        }),
        Err(e) => out.check(false, || format!("{label}: closure failed: {e}")),
    }
    // containment equivalences
    match lat.efg_equivalences(&t_lat) {
        Ok(rep) => out.check(rep.consistent(), || {
            format!("{label}: containment equivalence sides disagree")
        }),
        Err(e) => out.check(false, || format!("{label}: efg failed: {e}")),
    }
    // quotient exponent within the proven bound
    let bound = BigInt::from(n).pow(r as u32 - 1);
    out.check(quot.exponent <= bound, || {
        format!("{label}: exponent {} exceeds bound {}", quot.exponent, bound)
    });
}

fn suite_lattice_corpus() -> Suite {
    Suite {
        name: "lattice-saturation",
        id: 8,
        cases: 3000,
        run: Box::new(|case, rng| {
            let mut out = CaseOutcome::default();
            let n = [2u64, 3, 4][(case / 1000) as usize];
            let d = 1 + (case as usize % 3);
            let t = (case % 2) as u32;
            let gamma0 = random_quasiunipotent(n, d, rng);
            lattice_case(n, d, t, gamma0, &mut out, &format!("corpus n={n} case={case}"));
            out
        }),
    }
}

fn suite_thm61() -> Suite {
    let pairs = [(1usize, 2u64), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)];
    Suite {
        name: "scenarios-kernel-bounds",
        id: 9,
        cases: 1200,
        run: Box::new(move |case, rng| {
            let mut out = CaseOutcome::default();
            let (d, n) = pairs[(case / 200) as usize];
            // The kernel bounds assume the level-n criterion (gamma - 1)^2 = 0
            // on X_n, which is strictly stronger than quasi-unipotence; e.g. a
            // 2x2 operator with eigenvalues 1 and -1 is quasi-unipotent but
            // fails the criterion mod 4. Rejection-sample into the hypothesis
            // class.
            let id = IntMatrix::identity(2 * d);
            let nb = BigInt::from(n);
            let gamma0 = loop {
                let g = random_quasiunipotent(n, d, rng);
                let gm1 = g.sub(&id);
                if gm1.mul(&gm1).divisible_by(&nb) {
                    break g;
                }
            };
            let lat = OperatorLattice::with_standard_basis(n, d, 0, gamma0)
                .expect("corpus operator is valid");
            let (t_lat, quot) = lat.saturate().expect("quasi-unipotent");
            let bound = BigInt::from(ellcor_kernel_bound(d, n).unwrap());
            out.check((&bound % &quot.exponent).is_zero() && quot.exponent <= bound, || {
                format!("exponent {} above bound {} at d={d}, n={n}", quot.exponent, bound)
            });
            if d == 1 {
                out.check(t_lat == *lat.lattice(), || {
                    format!("d=1 saturation moved the lattice at n={n} case={case}")
                });
            }
            out
        }),
    }
}

fn suite_decisions() -> Suite {
    // 7 certificate cases + 1 worked-decision case + monotonicity over
    // sampled SL2 pairs
    let pool4 = enumerate_sp2(4);
    let pool3 = enumerate_sp2(3);
    let mono: Vec<(IntMatrix, IntMatrix)> = pool4
        .iter()
        .flat_map(|g4| pool3.iter().map(move |g3| (g4.clone(), g3.clone())))
        .collect();
    let total = 8 + mono.len() as u64;
    Suite {
        name: "scenarios-decisions",
        id: 10,
        cases: total,
        run: Box::new(move |case, _rng| {
            let mut out = CaseOutcome::default();
            match case {
                0..=6 => {
                    let id = ExampleId::ALL[case as usize];
                    let c1 = run_example(id);
                    let c2 = run_example(id);
                    out.check(!c1.falsified(), || format!("{} falsified", id.as_str()));
                    out.check(c1.machine_block() == c2.machine_block(), || {
                        format!("{} not deterministic", id.as_str())
                    });
                }
                7 => {
                    // worked decisions and the padd relations, with the
                    // finite-level enumeration cross-check
                    let id2 = IntMatrix::identity(2);
                    let one = elliptic_degree_decision(&id2, &id2).unwrap();
                    out.check(one.class.as_str() == "1", || "identity pair != 1".into());
                    let two = elliptic_degree_decision(&id2.neg(), &id2).unwrap();
                    out.check(two.class.as_str() == "2", || "(-1, 1) pair != 2".into());
                    let g4 = IntMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
                    let g3 = IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
                    let six = elliptic_degree_decision(&g4, &g3).unwrap();
                    out.check(six.class.as_str() == ">=6", || "fixed-point-free pair != >=6".into());
                    for (gamma, case_kind, flag) in [
                        (id2.neg(), PaddCase::QuadraticGood, false),
                        (IntPoly::from_i64(&[1, 1, 1]).companion(), PaddCase::CubicGood, false),
                        (
                            IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]),
                            PaddCase::QuarticViaQuadratic,
                            true,
                        ),
                    ] {
                        let v = padd_decision(&gamma, case_kind, flag).unwrap();
                        out.check(v.relation_holds && v.squared_vanishes_at_level, || {
                            format!("padd relation failed for level {}", case_kind.level())
                        });
                        // enumeration at the finite level
                        let n = case_kind.level();
                        let nb = BigInt::from(n);
                        let sq = {
                            let d = gamma.sub(&IntMatrix::identity(2));
                            d.mul(&d)
                        };
                        let mut all_killed = true;
                        for a in 0..n {
                            for b in 0..n {
                                let img = sq.mul_vec(&[BigInt::from(a), BigInt::from(b)]);
                                if !img.iter().all(|x| x.mod_floor(&nb).is_zero()) {
                                    all_killed = false;
                                }
                            }
                        }
                        out.check(all_killed, || {
                            format!("enumeration contradicts vanishing at level {n}")
                        });
                    }
                }
                _ => {
                    let (g4, g3) = &mono[(case - 8) as usize];
                    let base = elliptic_degree_decision(g4, g3).unwrap().class;
                    // powering a matrix only enlarges its fixed-point
                    // structure, so the degree class never increases
                    for k in [2u64, 3, 4, 6] {
                        let powered =
                            elliptic_degree_decision(&g4.pow(k), &g3.pow(k)).unwrap().class;
                        out.check(powered <= base, || {
                            format!("degree increased under power {k} at case {case}")
                        });
                    }
                }
            }
            out
        }),
    }
}

fn all_suites() -> Vec<Suite> {
    vec![
        suite_linalg(),
        suite_quasithm(),
        suite_primroot(),
        suite_algprop(),
        suite_localglobal(),
        suite_sp2_exhaustive(),
        suite_sp4_sampled(),
        suite_lattice_corpus(),
        suite_thm61(),
        suite_decisions(),
    ]
}

/// Run every suite, partitioning cases across `shards` workers. Case values
/// depend only on (seed, suite, case index), so results are independent of
/// the partition.
pub fn run_all(seed: u64, shards: u32) -> VerifyReport {
    let shards = shards.max(1);
    let suites = all_suites();
    let mut results: Vec<SuiteResult> = suites
        .iter()
        .map(|s| SuiteResult { name: s.name, cases: s.cases, checks: 0, exceptions: Vec::new() })
        .collect();

    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                let suites = &suites;
                scope.spawn(move || {
                    let mut partial: Vec<(u64, Vec<String>)> =
                        suites.iter().map(|_| (0u64, Vec::new())).collect();
                    for (si, suite) in suites.iter().enumerate() {
                        let mut case = shard as u64;
                        while case < suite.cases {
                            let mut rng = case_rng(seed, suite.id, case);
                            let outcome = (suite.run)(case, &mut rng);
                            partial[si].0 += outcome.checks;
                            partial[si].1.extend(outcome.exceptions);
                            case += shards as u64;
                        }
                    }
                    partial
                })
            })
            .collect();
        for h in handles {
            let partial = h.join().expect("shard panicked");
            for (si, (checks, exceptions)) in partial.into_iter().enumerate() {
                results[si].checks += checks;
                results[si].exceptions.extend(exceptions);
            }
        }
    });
    for r in &mut results {
        r.exceptions.sort();
    }
    VerifyReport { seed, suites: results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_generator_is_valid() {
        let mut rng = case_rng(7, 99, 0);
        for n in [2u64, 3, 4] {
            for d in 1..=3usize {
                let g = random_quasiunipotent(n, d, &mut rng);
                let r = r_of(n).unwrap();
                let dim = 2 * d;
                let id = IntMatrix::identity(dim);
                let m = g.pow(r).sub(&id);
                assert!(m.mul(&m).is_zero(), "not quasi-unipotent at n={n}, d={d}");
                assert!(g.det().abs() == BigInt::one(), "not unimodular at n={n}, d={d}");
            }
        }
    }

    #[test]
    fn small_run_shard_invariant() {
        // a reduced sweep: compare single suite outcomes across shard counts
        // via the public entry point would be slow here; rely on the
        // per-case RNG derivation instead
        let a = case_rng(42, 7, 13).gen::<u64>();
        let b = case_rng(42, 7, 13).gen::<u64>();
        assert_eq!(a, b);
        let c = case_rng(42, 7, 14).gen::<u64>();
        assert_ne!(a, c);
    }
}
