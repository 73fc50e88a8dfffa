//! Level-n torsion modules with inertia-generator action and a perfect
//! pairing: fixed submodules, orthogonal complements, and the equivalences
//! between "trivial action on S and S-perp" and "(gamma - 1)^2 = 0".
//!
//! Inertia is modeled by a single generator gamma; the tame quotient it acts
//! through is pro-cyclic, and wild inertia is excluded by construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::Error;
use crate::linalg::{hnf, int_kernel, IntMatrix};

/// Which side of the pair an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    XStar,
}

/// Level n, rank 2d, the action of the inertia generator on X_n and X_n^*,
/// and the pairing matrix E with gammaX^T * E * gammaXstar = E mod n.
#[derive(Debug, Clone)]
pub struct TorsionPairData {
    pub n: u64,
    pub d: usize,
    gamma_x: IntMatrix,
    gamma_xstar: IntMatrix,
    pairing: IntMatrix,
}

fn is_unit_mod(v: &BigInt, n: &BigInt) -> bool {
    v.mod_floor(n).gcd(n).is_one()
}

/// Standard symplectic form J = [[0, I], [-I, 0]].
pub fn standard_symplectic_form(d: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * d, 2 * d, |i, j| {
        if j == i + d {
            BigInt::one()
        } else if i == j + d {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Is gamma in Sp_2d(Z/nZ) with respect to the form E?
pub fn is_symplectic_mod(gamma: &IntMatrix, form: &IntMatrix, n: u64) -> bool {
    let nb = BigInt::from(n);
    gamma
        .transpose()
        .mul(form)
        .mul(gamma)
        .sub(form)
        .is_zero_mod(&nb)
}

impl TorsionPairData {
    pub fn new(
        n: u64,
        d: usize,
        gamma_x: IntMatrix,
        gamma_xstar: IntMatrix,
        pairing: IntMatrix,
    ) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::domain("level n must be at least 2"));
        }
        let nb = BigInt::from(n);
        let dim = 2 * d;
        for (name, m) in [
            ("gammaX", &gamma_x),
            ("gammaXstar", &gamma_xstar),
            ("pairing", &pairing),
        ] {
            if m.rows != dim || m.cols != dim {
                return Err(Error::domain(format!("{name} must be {dim}x{dim}")));
            }
        }
        if !is_unit_mod(&pairing.det(), &nb) {
            return Err(Error::domain("pairing is not perfect: det(E) not a unit mod n"));
        }
        if !is_unit_mod(&gamma_x.det(), &nb) || !is_unit_mod(&gamma_xstar.det(), &nb) {
            return Err(Error::domain("action matrices must be invertible mod n"));
        }
        if !gamma_x
            .transpose()
            .mul(&pairing)
            .mul(&gamma_xstar)
            .sub(&pairing)
            .is_zero_mod(&nb)
        {
            return Err(Error::domain(
                "pairing invariance fails: gammaX^T E gammaXstar != E mod n",
            ));
        }
        Ok(TorsionPairData {
            n,
            d,
            gamma_x: gamma_x.reduce_mod(&nb),
            gamma_xstar: gamma_xstar.reduce_mod(&nb),
            pairing: pairing.reduce_mod(&nb),
        })
    }

    /// Principally polarized constructor: X_n^* identified with X_n, pairing
    /// the standard symplectic form, gamma required to be symplectic mod n.
    pub fn standard_principal(n: u64, d: usize, gamma: IntMatrix) -> Result<Self, Error> {
        let j = standard_symplectic_form(d);
        if !is_symplectic_mod(&gamma, &j, n) {
            return Err(Error::NotSymplectic(n.to_string()));
        }
        Self::new(n, d, gamma.clone(), gamma, j)
    }

    pub fn rank(&self) -> usize {
        2 * self.d
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    pub fn gamma(&self, side: Side) -> &IntMatrix {
        match side {
            Side::X => &self.gamma_x,
            Side::XStar => &self.gamma_xstar,
        }
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// ker(gamma^m - 1) on the chosen side; for m = 1 this is the fixed
    /// submodule under the cyclic inertia model.
    pub fn fixed_submodule(&self, side: Side, m: u64) -> Submodule {
        let dim = self.rank();
        let a = self
            .gamma(side)
            .pow(m)
            .sub(&IntMatrix::identity(dim))
            .reduce_mod(&self.n_big());
        Submodule::kernel_mod_n(&a, self.n)
    }

    /// S^perp = { y in X_n^* : x^T E y = 0 mod n for all x in S }.
    pub fn orthogonal_complement(&self, s: &Submodule) -> Submodule {
        assert_eq!(s.rank(), self.rank());
        let m = s.basis().mul(&self.pairing);
        Submodule::kernel_mod_n(&m, self.n)
    }

    /// Double complement via the transposed pairing: the complement of a
    /// submodule of X_n^* back inside X_n.
    pub fn orthogonal_complement_star(&self, s: &Submodule) -> Submodule {
        let m = s.basis().mul(&self.pairing.transpose());
        Submodule::kernel_mod_n(&m, self.n)
    }

    /// Image (gamma^m - 1) X_n (or the starred side) as a submodule.
    pub fn difference_image(&self, side: Side, m: u64) -> Submodule {
        let dim = self.rank();
        let a = self.gamma(side).pow(m).sub(&IntMatrix::identity(dim));
        Submodule::from_generators(&a.transpose(), self.n)
    }

    /// Does (gamma^m - 1) annihilate the submodule (on the given side)?
    pub fn kills(&self, side: Side, m: u64, s: &Submodule) -> bool {
        let dim = self.rank();
        let a = self.gamma(side).pow(m).sub(&IntMatrix::identity(dim));
        let prod = s.basis().mul(&a.transpose());
        prod.is_zero_mod(&self.n_big())
    }

    /// Is (gamma^m - 1)^2 = 0 on X_n?
    pub fn squared_difference_vanishes(&self, side: Side, m: u64) -> bool {
        let dim = self.rank();
        let a = self.gamma(side).pow(m).sub(&IntMatrix::identity(dim));
        a.mul(&a).is_zero_mod(&self.n_big())
    }

    /// If (gamma^m - 1) kills S and S^perp, then (gamma^m - 1)^2 kills X_n.
    pub fn ssprelem_check(&self, s: &Submodule, m: u64) -> PairVerdict {
        let sperp = self.orthogonal_complement(s);
        let hyp = self.kills(Side::X, m, s) && self.kills(Side::XStar, m, &sperp);
        let concl = self.squared_difference_vanishes(Side::X, m);
        PairVerdict { hyp, concl }
    }

    /// With S the fixed submodule of X_n: gamma acts trivially on S^perp
    /// iff (gamma - 1)^2 = 0 on X_n.
    pub fn sslem_equivalence(&self) -> PairVerdict {
        let s = self.fixed_submodule(Side::X, 1);
        let sperp = self.orthogonal_complement(&s);
        let lhs = self.kills(Side::XStar, 1, &sperp);
        let rhs = self.squared_difference_vanishes(Side::X, 1);
        PairVerdict { hyp: lhs, concl: rhs }
    }

    /// The counting identities from the proof of the fixed-submodule lemma.
    /// Any failure would falsify the underlying statement.
    pub fn counting_identities(&self) -> CountingReport {
        let total = self.n_big().pow(self.rank() as u32);
        let s = self.fixed_submodule(Side::X, 1);
        let sperp = self.orthogonal_complement(&s);
        let img_x = self.difference_image(Side::X, 1);
        let fixed_star = self.fixed_submodule(Side::XStar, 1);
        let img_star = self.difference_image(Side::XStar, 1);

        let mut failures = Vec::new();
        if s.cardinality() * img_x.cardinality() != total {
            failures.push("#S * #((gamma-1)X_n) != n^2d".to_string());
        }
        if s.cardinality() * sperp.cardinality() != total {
            failures.push("#S * #S_perp != n^2d".to_string());
        }
        if fixed_star.cardinality() * img_star.cardinality() != total {
            failures.push("#((X_n*)^I) * #((gamma-1)X_n*) != n^2d".to_string());
        }
        if self.squared_difference_vanishes(Side::X, 1) && sperp != img_star {
            failures.push("S_perp != (gamma-1)X_n* despite (gamma-1)^2 = 0".to_string());
        }
        CountingReport { failures }
    }

    /// Under (gamma - 1)^2 = 0 on X_n: gamma^n = 1 on X_n.
    pub fn unipotence_exponent_check(&self) -> bool {
        let dim = self.rank();
        self.gamma_x
            .pow(self.n)
            .sub(&IntMatrix::identity(dim))
            .is_zero_mod(&self.n_big())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairVerdict {
    pub hyp: bool,
    pub concl: bool,
}

#[derive(Debug, Clone)]
pub struct CountingReport {
    pub failures: Vec<String>,
}

impl CountingReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Subgroup of (Z/nZ)^r, stored as the row HNF basis of its preimage lattice
/// L with nZ^r <= L <= Z^r. Equality of subgroups is equality of the
/// canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    n: u64,
    basis: IntMatrix, // r x r, row HNF, full rank
}

impl Submodule {
    /// Subgroup generated by the rows of `gens` (each row one generator).
    pub fn from_generators(gens: &IntMatrix, n: u64) -> Self {
        let r = gens.cols;
        let nb = BigInt::from(n);
        let stacked = gens.vstack(&IntMatrix::identity(r).scalar_mul(&nb));
        let (h, _) = hnf(&stacked);
        // full rank r is guaranteed by the nZ^r rows
        let basis = IntMatrix::from_fn(r, r, |i, j| h.get(i, j).clone());
        Submodule { n, basis }
    }

    pub fn zero(n: u64, r: usize) -> Self {
        Self::from_generators(&IntMatrix::zero(1, r), n)
    }

    pub fn full(n: u64, r: usize) -> Self {
        Submodule {
            n,
            basis: IntMatrix::identity(r),
        }
    }

    /// { x : A x = 0 mod n }, A any integer matrix with `r` columns.
    pub fn kernel_mod_n(a: &IntMatrix, n: u64) -> Self {
        let r = a.cols;
        let nb = BigInt::from(n);
        let ext = a.hstack(&IntMatrix::identity(a.rows).scalar_mul(&nb));
        let k = int_kernel(&ext);
        let gens = IntMatrix::from_fn(k.rows, r, |i, j| k.get(i, j).clone());
        Self::from_generators(&gens, n)
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Number of elements: n^r / [Z^r : L].
    pub fn cardinality(&self) -> BigInt {
        let index: BigInt = (0..self.rank()).map(|i| self.basis.get(i, i).clone()).product();
        BigInt::from(self.n).pow(self.rank() as u32) / index
    }

    /// Integer membership test against the upper-triangular HNF basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let r = self.rank();
        assert_eq!(v.len(), r);
        let mut rem: Vec<BigInt> = v.to_vec();
        for i in 0..r {
            let pivot = self.basis.get(i, i);
            let (q, rr) = rem[i].div_rem(pivot);
            if !rr.is_zero() {
                return false;
            }
            for j in i..r {
                let delta = &q * self.basis.get(i, j);
                rem[j] -= delta;
            }
        }
        rem.iter().all(|x| x.is_zero())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        (0..self.rank()).all(|i| other.contains(&self.basis.row(i)))
    }

    /// All elements, as vectors with coordinates in [0, n). Only for tiny
    /// ambient modules (enumeration oracles in tests).
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        let n = self.n;
        let total = (n as u128).pow(r as u32);
        assert!(total <= 1 << 20, "enumeration only for tiny modules");
        let mut out = Vec::new();
        for idx in 0..total {
            let mut v = Vec::with_capacity(r);
            let mut x = idx;
            for _ in 0..r {
                v.push(BigInt::from((x % n as u128) as u64));
                x /= n as u128;
            }
            if self.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

/// All 2x2 matrices over Z/nZ with determinant 1 (Sp_2 = SL_2).
pub fn enumerate_sp2(n: u64) -> Vec<IntMatrix> {
    let nb = BigInt::from(n);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a as i128 * d as i128 - b as i128 * c as i128).rem_euclid(n as i128);
                    if det == 1 {
                        out.push(
                            IntMatrix::from_i64(&[
                                vec![a as i64, b as i64],
                                vec![c as i64, d as i64],
                            ])
                            .reduce_mod(&nb),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Symplectic transvection x -> x + c * omega(x, v) * v, as a matrix mod n.
fn transvection(v: &[BigInt], c: &BigInt, d: usize, n: &BigInt) -> IntMatrix {
    let dim = 2 * d;
    let j = standard_symplectic_form(d);
    let vm = IntMatrix::from_fn(dim, 1, |i, _| v[i].clone());
    // x + c * (x^T J v) v = (I + c * v * (J v)^T applied with sign care)
    let jv = j.mul(&vm); // column J v
    let outer = vm.mul(&jv.transpose()); // v (Jv)^T, so outer * x = v * (v^T J^T x)
    // omega(x, v) = x^T J v = (J v)^T x ... v * ((Jv)^T x) = (v (Jv)^T) x
    IntMatrix::identity(dim)
        .add(&outer.scalar_mul(c))
        .reduce_mod(n)
}

/// Random element of Sp_2d(Z/nZ) as a product of random symplectic
/// transvections.
pub fn random_symplectic(n: u64, d: usize, rng: &mut impl Rng) -> IntMatrix {
    let nb = BigInt::from(n);
    let dim = 2 * d;
    let mut g = IntMatrix::identity(dim);
    let steps = 12 + 2 * dim;
    for _ in 0..steps {
        let v: Vec<BigInt> = (0..dim).map(|_| BigInt::from(rng.gen_range(0..n))).collect();
        let c = BigInt::from(rng.gen_range(0..n));
        g = g.mul(&transvection(&v, &c, d, &nb)).reduce_mod(&nb);
    }
    debug_assert!(is_symplectic_mod(&g, &standard_symplectic_form(d), n));
    g
}

/// Every subgroup of (Z/nZ)^r, deduplicated by canonical basis. Exponential;
/// intended for the exhaustive oracles at n <= 4, r <= 4.
pub fn all_submodules(n: u64, r: usize) -> Vec<Submodule> {
    let count = (n as u128).pow(r as u32);
    assert!(count <= 256, "all_submodules only for tiny ambient modules");
    let vectors: Vec<Vec<BigInt>> = (0..count)
        .map(|idx| {
            let mut v = Vec::with_capacity(r);
            let mut x = idx;
            for _ in 0..r {
                v.push(BigInt::from((x % n as u128) as u64));
                x /= n as u128;
            }
            v
        })
        .collect();
    let mut seen: Vec<Submodule> = vec![Submodule::zero(n, r)];
    // closure: repeatedly extend known subgroups by one generator
    let mut frontier = seen.clone();
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut gens: Vec<Vec<BigInt>> = (0..r).map(|i| s.basis().row(i)).collect();
            gens.push(v.clone());
            let gm = IntMatrix::from_fn(gens.len(), r, |i, j| gens[i][j].clone());
            let bigger = Submodule::from_generators(&gm, n);
            if !seen.contains(&bigger) {
                seen.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn standard_principal_examples() {
        assert!(TorsionPairData::standard_principal(2, 1, IntMatrix::identity(2)).is_ok());
        assert!(TorsionPairData::standard_principal(4, 1, m(&[vec![0, -1], vec![1, 0]])).is_ok());
        assert!(TorsionPairData::standard_principal(3, 1, m(&[vec![1, 1], vec![0, 1]])).is_ok());
        // det 2 mod 3: not symplectic
        assert!(TorsionPairData::standard_principal(3, 1, m(&[vec![2, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn fixed_submodule_examples() {
        let p = TorsionPairData::standard_principal(3, 1, IntMatrix::identity(2)).unwrap();
        assert_eq!(p.fixed_submodule(Side::X, 1), Submodule::full(3, 2));

        // -1 = 1 mod 2
        let p = TorsionPairData::standard_principal(2, 1, m(&[vec![-1, 0], vec![0, -1]])).unwrap();
        assert_eq!(p.fixed_submodule(Side::X, 1), Submodule::full(2, 2));

        // transvection at n = 2: fixed line generated by (1, 0)
        let p = TorsionPairData::standard_principal(2, 1, m(&[vec![1, 1], vec![0, 1]])).unwrap();
        let s = p.fixed_submodule(Side::X, 1);
        assert_eq!(s.cardinality(), BigInt::from(2));
        // oracle: enumerate all 4 elements of (Z/2)^2
        let fixed: Vec<_> = Submodule::full(2, 2)
            .elements()
            .into_iter()
            .filter(|v| {
                let gv = p.gamma(Side::X).mul_vec(v);
                gv.iter()
                    .zip(v)
                    .all(|(a, b)| (a - b).mod_floor(&BigInt::from(2)).is_zero())
            })
            .collect();
        assert_eq!(fixed.len(), 2);
        for v in &fixed {
            assert!(s.contains(v));
        }
    }

    #[test]
    fn orthogonal_complement_examples() {
        let p = TorsionPairData::standard_principal(4, 1, m(&[vec![0, -1], vec![1, 0]])).unwrap();
        // S = 0 -> full
        let zero = Submodule::zero(4, 2);
        assert_eq!(p.orthogonal_complement(&zero), Submodule::full(4, 2));
        // S = full -> 0
        assert_eq!(p.orthogonal_complement(&Submodule::full(4, 2)), zero);
        // n = m^2 = 4, S = 2-torsion (= 2 X_4): complement is the 2-torsion
        let two_torsion = Submodule::from_generators(&m(&[vec![2, 0], vec![0, 2]]), 4);
        assert_eq!(p.orthogonal_complement(&two_torsion), two_torsion);
        // cardinality identity
        let s = Submodule::from_generators(&m(&[vec![1, 0]]), 4);
        let sp = p.orthogonal_complement(&s);
        assert_eq!(s.cardinality() * sp.cardinality(), BigInt::from(16));
    }

    #[test]
    fn elliptic_cyclic_self_complement() {
        // elliptic case d = 1: S cyclic of order n in standard position is
        // its own complement
        for n in [2u64, 3, 4, 5] {
            let p = TorsionPairData::standard_principal(n, 1, IntMatrix::identity(2)).unwrap();
            let s = Submodule::from_generators(&m(&[vec![1, 0]]), n);
            assert_eq!(s.cardinality(), BigInt::from(n));
            assert_eq!(p.orthogonal_complement(&s), s);
        }
    }

    #[test]
    fn ssprelem_examples() {
        let p = TorsionPairData::standard_principal(3, 1, IntMatrix::identity(2)).unwrap();
        let v = p.ssprelem_check(&p.fixed_submodule(Side::X, 1), 1);
        assert!(v.hyp && v.concl);

        let p = TorsionPairData::standard_principal(2, 1, m(&[vec![1, 1], vec![0, 1]])).unwrap();
        let v = p.ssprelem_check(&p.fixed_submodule(Side::X, 1), 1);
        assert!(v.hyp && v.concl);

        // n = 4, gamma = J, m = 2: gamma^2 = -1, (gamma^2 - 1)^2 = 4(...) = 0 mod 4
        let p = TorsionPairData::standard_principal(4, 1, m(&[vec![0, -1], vec![1, 0]])).unwrap();
        let v = p.ssprelem_check(&p.fixed_submodule(Side::X, 2), 2);
        assert!(v.concl);
        assert!(!(v.hyp && !v.concl));
    }

    #[test]
    fn sslem_examples() {
        let p = TorsionPairData::standard_principal(5, 1, IntMatrix::identity(2)).unwrap();
        let v = p.sslem_equivalence();
        assert!(v.hyp && v.concl);

        let p = TorsionPairData::standard_principal(2, 1, m(&[vec![1, 1], vec![0, 1]])).unwrap();
        let v = p.sslem_equivalence();
        assert!(v.hyp && v.concl);

        // n = 4, gamma = J: (gamma - 1)^2 = -2 gamma != 0 mod 4
        let p = TorsionPairData::standard_principal(4, 1, m(&[vec![0, -1], vec![1, 0]])).unwrap();
        let v = p.sslem_equivalence();
        assert!(!v.hyp && !v.concl);
    }

    #[test]
    fn counting_identity_examples() {
        let p = TorsionPairData::standard_principal(3, 1, m(&[vec![1, 1], vec![0, 1]])).unwrap();
        let s = p.fixed_submodule(Side::X, 1);
        assert_eq!(s.cardinality(), BigInt::from(3));
        assert_eq!(p.difference_image(Side::X, 1).cardinality(), BigInt::from(3));
        assert!(p.counting_identities().ok());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_symplectic(2, 2, &mut rng);
            let p = TorsionPairData::standard_principal(2, 2, g).unwrap();
            assert!(p.counting_identities().ok());
        }
    }

    #[test]
    fn unipotence_exponent_examples() {
        let p = TorsionPairData::standard_principal(2, 1, m(&[vec![1, 1], vec![0, 1]])).unwrap();
        assert!(p.squared_difference_vanishes(Side::X, 1));
        assert!(p.unipotence_exponent_check());

        let p = TorsionPairData::standard_principal(4, 1, m(&[vec![1, 2], vec![0, 1]])).unwrap();
        assert!(p.squared_difference_vanishes(Side::X, 1));
        assert!(p.unipotence_exponent_check());
    }

    #[test]
    fn double_complement_is_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [2u64, 3, 4] {
            for g in enumerate_sp2(n).into_iter().take(10) {
                let p = TorsionPairData::standard_principal(n, 1, g).unwrap();
                for s in all_submodules(n, 2) {
                    let sp = p.orthogonal_complement(&s);
                    let back = p.orthogonal_complement_star(&sp);
                    assert_eq!(back, s);
                }
            }
            let g = random_symplectic(n, 2, &mut rng);
            let p = TorsionPairData::standard_principal(n, 2, g).unwrap();
            let s = p.fixed_submodule(Side::X, 1);
            assert_eq!(p.orthogonal_complement_star(&p.orthogonal_complement(&s)), s);
        }
    }

    #[test]
    fn sp2_orders() {
        assert_eq!(enumerate_sp2(2).len(), 6);
        assert_eq!(enumerate_sp2(3).len(), 24);
        assert_eq!(enumerate_sp2(4).len(), 48);
    }

    #[test]
    fn random_symplectic_is_symplectic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in [2u64, 3] {
            for _ in 0..50 {
                let g = random_symplectic(n, 2, &mut rng);
                assert!(is_symplectic_mod(&g, &standard_symplectic_form(2), n));
            }
        }
    }
}
