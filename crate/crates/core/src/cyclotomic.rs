//! Arithmetic in Z[zeta_m] and the integrality / root-of-unity checks that
//! drive the degree table R(n).
//!
//! Elements are stored exactly in the power basis 1, zeta, ..., zeta^(phi(m)-1)
//! modulo the m-th cyclotomic polynomial. No complex approximations exist:
//! every check here is a divisibility or norm statement in Z[zeta].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::Error;
use crate::linalg::{charpoly_rat, IntMatrix, IntPoly, RatMatrix};

/// The degree table: R(n) = 1 for n >= 5, R(4) = 2, R(3) = 3, R(2) = 4.
pub fn r_of(n: u64) -> Result<u64, Error> {
    match n {
        0 | 1 => Err(Error::domain(format!("R(n) undefined for n = {n}"))),
        2 => Ok(4),
        3 => Ok(3),
        4 => Ok(2),
        _ => Ok(1),
    }
}

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut phi = m;
    let mut x = m;
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            phi -= phi / p;
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        phi -= phi / x;
    }
    phi
}

fn divisors(m: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=m).filter(|k| m % k == 0).collect();
    d.sort_unstable();
    d
}

/// m-th cyclotomic polynomial, computed by exact division of x^m - 1 by the
/// cyclotomic polynomials of the proper divisors. Memoized; conductors in
/// this artifact stay below ~100.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    static CACHE: Mutex<Option<HashMap<u64, IntPoly>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    fn compute(m: u64, cache: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if let Some(p) = cache.get(&m) {
            return p.clone();
        }
        let mut coeffs = vec![BigInt::zero(); m as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[m as usize] = BigInt::one();
        let mut num = IntPoly::new(coeffs); // x^m - 1
        for d in divisors(m) {
            if d < m {
                let phi_d = compute(d, cache);
                num = num
                    .div_exact(&phi_d)
                    .expect("cyclotomic polynomials divide x^m - 1 exactly");
            }
        }
        cache.insert(m, num.clone());
        num
    }
    compute(m, cache)
}

/// Remainder of `p` modulo a monic polynomial (exact over Z).
fn rem_monic(p: &IntPoly, modulus: &IntPoly) -> IntPoly {
    assert!(modulus.is_monic());
    let dd = modulus.degree();
    let mut rem: Vec<BigInt> = p.coeffs().to_vec();
    if rem.len() <= dd {
        return p.clone();
    }
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (k, mc) in modulus.coeffs().iter().enumerate() {
            rem[i - dd + k] -= &c * mc;
        }
    }
    rem.truncate(dd.max(1));
    IntPoly::new(rem)
}

/// Element of Z[zeta_m] in the power basis modulo the m-th cyclotomic
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElt {
    m: u64,
    coords: Vec<BigInt>,
}

impl CycloElt {
    pub fn zero(m: u64) -> Self {
        CycloElt {
            m,
            coords: vec![BigInt::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        let mut e = Self::zero(m);
        e.coords[0] = BigInt::one();
        e
    }

    pub fn from_integer(m: u64, v: BigInt) -> Self {
        let mut e = Self::zero(m);
        e.coords[0] = v;
        e
    }

    /// zeta_m^j, reduced into the power basis.
    pub fn root_of_unity(m: u64, j: u64) -> Self {
        let j = j % m;
        let mut coeffs = vec![BigInt::zero(); j as usize + 1];
        coeffs[j as usize] = BigInt::one();
        Self::from_poly(m, &IntPoly::new(coeffs))
    }

    pub fn from_poly(m: u64, p: &IntPoly) -> Self {
        let phi = euler_phi(m) as usize;
        let r = rem_monic(p, &cyclotomic_polynomial(m));
        let mut coords = r.coeffs().to_vec();
        coords.resize(phi, BigInt::zero());
        CycloElt { m, coords }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.m)
    }

    pub fn add(&self, other: &CycloElt) -> CycloElt {
        assert_eq!(self.m, other.m);
        CycloElt {
            m: self.m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CycloElt) -> CycloElt {
        assert_eq!(self.m, other.m);
        CycloElt {
            m: self.m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &CycloElt) -> CycloElt {
        assert_eq!(self.m, other.m);
        Self::from_poly(self.m, &self.to_poly().mul(&other.to_poly()))
    }

    pub fn pow(&self, e: u64) -> CycloElt {
        let mut acc = Self::one(self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative order, or None if this is not a root of unity (searched
    /// up to a bound that covers every root of unity in Q(zeta_m)).
    pub fn multiplicative_order(&self) -> Option<u64> {
        let bound = 2 * self.m.max(1);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Matrix of multiplication by `self` on the power basis.
    pub fn multiplication_matrix(&self) -> IntMatrix {
        let phi = euler_phi(self.m) as usize;
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut basis = vec![BigInt::zero(); j + 1];
            basis[j] = BigInt::one();
            let prod = Self::from_poly(self.m, &self.to_poly().mul(&IntPoly::new(basis)));
            cols.push(prod.coords);
        }
        IntMatrix::from_fn(phi, phi, |i, j| cols[j][i].clone())
    }

    /// Field norm from Q(zeta_m) down to Q, via the resultant of the
    /// representative polynomial with the cyclotomic polynomial.
    pub fn norm(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        sylvester_resultant(&cyclotomic_polynomial(self.m), &self.to_poly())
    }

    /// Exact division of every coordinate by `d`; None if any is not divisible.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<CycloElt> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(CycloElt {
            m: self.m,
            coords,
        })
    }
}

/// Resultant of `f` and `g` as the determinant of their Sylvester matrix.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (df, dg) = (f.degree(), g.degree());
    if df == 0 {
        return f.coeff(0).pow(dg as u32);
    }
    if dg == 0 {
        return g.coeff(0).pow(df as u32);
    }
    let n = df + dg;
    IntMatrix::from_fn(n, n, |i, j| {
        if i < dg {
            // row of f coefficients, descending, shifted by i
            if j >= i && j - i <= df {
                f.coeff(df - (j - i))
            } else {
                BigInt::zero()
            }
        } else {
            let i = i - dg;
            if j >= i && j - i <= dg {
                g.coeff(dg - (j - i))
            } else {
                BigInt::zero()
            }
        }
    })
    .det()
}

/// True iff every power-basis coordinate of `beta` is divisible by `n`.
/// For the scalar ideal nZ[zeta] this coordinate test is exact.
pub fn ideal_membership(beta: &CycloElt, n: u64) -> bool {
    let n = BigInt::from(n);
    beta.coords.iter().all(|c| c.mod_floor(&n).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasithmVerdict {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

/// For alpha = zeta_m^j: does (alpha-1)^2 lie in n Z[zeta_m], and is
/// alpha^R(n) = 1? The hypothesis is asserted to imply the conclusion.
pub fn check_quasithm(m: u64, j: u64, n: u64) -> Result<QuasithmVerdict, Error> {
    let r = r_of(n)?;
    let alpha = CycloElt::root_of_unity(m, j);
    let am1 = alpha.sub(&CycloElt::one(m));
    let hypothesis_holds = ideal_membership(&am1.mul(&am1), n);
    let conclusion_holds = alpha.pow(r).is_one();
    Ok(QuasithmVerdict {
        hypothesis_holds,
        conclusion_holds,
    })
}

/// Checks that (zeta - 1)^phi(l^s) / l is an element of Z[zeta] of norm +-1,
/// for zeta a primitive l^s-th root of unity.
pub fn primroot_unit_check(ell: u64, s: u32) -> Result<bool, Error> {
    if s == 0 {
        return Err(Error::domain("s must be positive"));
    }
    let m = ell
        .checked_pow(s)
        .ok_or_else(|| Error::domain("l^s overflows"))?;
    let zeta = CycloElt::root_of_unity(m, 1);
    let num = zeta.sub(&CycloElt::one(m)).pow(euler_phi(m));
    let u = match num.div_scalar_exact(&BigInt::from(ell)) {
        Some(u) => u,
        None => return Ok(false), // would falsify the statement
    };
    Ok(u.norm().abs().is_one())
}

/// Does (alpha - 1)^k lie in l^mexp Z[alpha], for alpha = zeta^j with zeta of
/// order l^r? Tested coordinate-wise in the power basis of Z[alpha], whose
/// conductor is the exact multiplicative order of alpha.
pub fn algprop_check(ell: u64, r: u32, k: u64, mexp: u32, j: u64) -> Result<bool, Error> {
    if r == 0 || mexp == 0 {
        return Err(Error::domain("r and mexp must be positive"));
    }
    let lr = ell
        .checked_pow(r)
        .ok_or_else(|| Error::domain("l^r overflows"))?;
    if k < mexp as u64 * euler_phi(lr) {
        return Err(Error::domain(format!(
            "hypothesis violated: k = {k} < mexp * phi(l^r) = {}",
            mexp as u64 * euler_phi(lr)
        )));
    }
    // exact order of alpha = zeta^j
    let order = lr / lr.gcd(&j);
    let alpha = CycloElt::root_of_unity(order, 1);
    let beta = alpha.sub(&CycloElt::one(order)).pow(k);
    let modulus = BigInt::from(ell).pow(mexp);
    Ok(beta
        .coords
        .iter()
        .all(|c| c.mod_floor(&modulus).is_zero()))
}

#[derive(Debug, Clone)]
pub struct LocalGlobalVerdict {
    pub hypotheses: bool,
    /// Monic integer polynomial annihilating every (alpha - 1)/sqrt(n), when
    /// the hypotheses hold.
    pub integral_witness: Option<IntPoly>,
}

/// Desk-scale specialization of the local-global eigenvalue lemma: a single
/// integer matrix stands for all the A_l at once (it embeds in M(Z_l) for
/// every l). Hypotheses: equal characteristic polynomials and
/// (A-1)^2 = 0 entrywise mod n. Witness: P(x^2) with P = charpoly((A-1)^2/n).
pub fn localglobal_check(matrices: &[IntMatrix], n: u64) -> Result<LocalGlobalVerdict, Error> {
    if n < 2 {
        return Err(Error::domain("n must be at least 2"));
    }
    if matrices.is_empty() {
        return Err(Error::domain("need at least one matrix"));
    }
    let dim = matrices[0].rows;
    for a in matrices {
        if !a.is_square() || a.rows != dim {
            return Err(Error::domain("matrices must be square of equal dimension"));
        }
    }
    let nbig = BigInt::from(n);
    let cp0 = crate::linalg::charpoly(&matrices[0]);
    let mut hypotheses = true;
    for a in matrices {
        if crate::linalg::charpoly(a) != cp0 {
            hypotheses = false;
        }
        let am1 = a.sub(&IntMatrix::identity(dim));
        if !am1.mul(&am1).divisible_by(&nbig) {
            hypotheses = false;
        }
    }
    if !hypotheses {
        return Ok(LocalGlobalVerdict {
            hypotheses: false,
            integral_witness: None,
        });
    }
    let a = &matrices[0];
    let am1 = a.sub(&IntMatrix::identity(dim));
    let sq = am1.mul(&am1);
    let b = RatMatrix::from_fn(dim, dim, |i, j| {
        num_rational::BigRational::new(sq.get(i, j).clone(), nbig.clone())
    });
    let p = charpoly_rat(&b)
        .to_int()
        .ok_or_else(|| Error::domain("charpoly((A-1)^2/n) not integral; falsifies the lemma"))?;
    Ok(LocalGlobalVerdict {
        hypotheses: true,
        integral_witness: Some(p.compose_x_squared()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_table() {
        assert_eq!(r_of(7).unwrap(), 1);
        assert_eq!(r_of(5).unwrap(), 1);
        assert_eq!(r_of(4).unwrap(), 2);
        assert_eq!(r_of(3).unwrap(), 3);
        assert_eq!(r_of(2).unwrap(), 4);
        assert!(r_of(1).is_err());
        assert!(r_of(0).is_err());
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn membership_examples() {
        // 4 in Z[i], n = 4
        let four = CycloElt::from_integer(4, BigInt::from(4));
        assert!(ideal_membership(&four, 4));
        // zeta_3 not in 3 Z[zeta_3]
        let z3 = CycloElt::root_of_unity(3, 1);
        assert!(!ideal_membership(&z3, 3));
        // (i - 1)^2 = -2i in 2 Z[i]; oracle: expand symbolically,
        // (i-1)^2 = i^2 - 2i + 1 = -2i
        let i = CycloElt::root_of_unity(4, 1);
        let sq = i.sub(&CycloElt::one(4)).pow(2);
        let minus_2i = CycloElt::from_poly(4, &IntPoly::from_i64(&[0, -2]));
        assert_eq!(sq, minus_2i);
        assert!(ideal_membership(&sq, 2));
    }

    #[test]
    fn quasithm_examples() {
        let v = check_quasithm(2, 1, 4).unwrap();
        assert!(v.hypothesis_holds && v.conclusion_holds);
        let v = check_quasithm(4, 1, 2).unwrap();
        assert!(v.hypothesis_holds && v.conclusion_holds);
        let v = check_quasithm(3, 1, 3).unwrap();
        assert!(v.hypothesis_holds && v.conclusion_holds);
    }

    #[test]
    fn primroot_unit_examples() {
        // (zeta_2 - 1)/2 = -1
        assert!(primroot_unit_check(2, 1).unwrap());
        // (zeta_3 - 1)^2 / 3 = -zeta_3
        assert!(primroot_unit_check(3, 1).unwrap());
        // (i - 1)^2 / 2 = -i
        assert!(primroot_unit_check(2, 2).unwrap());
    }

    #[test]
    fn algprop_examples() {
        assert!(algprop_check(2, 1, 1, 1, 1).unwrap());
        assert!(algprop_check(3, 1, 2, 1, 1).unwrap());
        assert!(algprop_check(2, 2, 4, 2, 1).unwrap());
        // hypothesis violated
        assert!(algprop_check(3, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn localglobal_examples() {
        let id = IntMatrix::identity(2);
        let v = localglobal_check(&[id.clone()], 4).unwrap();
        assert!(v.hypotheses);
        assert_eq!(v.integral_witness.unwrap(), IntPoly::from_i64(&[0, 0, 0, 0, 1]));

        let neg = id.neg();
        let v = localglobal_check(&[neg], 4).unwrap();
        assert!(v.hypotheses);
        // P = (x-1)^2, witness (x^2-1)^2 = x^4 - 2x^2 + 1
        assert_eq!(v.integral_witness.unwrap(), IntPoly::from_i64(&[1, 0, -2, 0, 1]));

        let j = IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
        let v = localglobal_check(&[j], 2).unwrap();
        assert!(v.hypotheses);
        // P = x^2 + 1, witness x^4 + 1
        assert_eq!(v.integral_witness.unwrap(), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn norm_via_resultant_matches_multiplication_matrix_det() {
        for (m, j) in [(3u64, 1u64), (4, 1), (5, 2), (8, 3), (12, 5)] {
            let z = CycloElt::root_of_unity(m, j);
            let e = z.sub(&CycloElt::one(m));
            assert_eq!(e.norm(), e.multiplication_matrix().det());
        }
    }

    #[test]
    fn sharpness_witnesses() {
        // alpha = i has exact order 4 and passes the n = 2 hypothesis, so
        // nothing smaller than R(2) = 4 works
        let i = CycloElt::root_of_unity(4, 1);
        assert_eq!(i.multiplicative_order(), Some(4));
        let v = check_quasithm(4, 1, 2).unwrap();
        assert!(v.hypothesis_holds);
        // alpha = zeta_3, exact order 3, n = 3
        assert_eq!(CycloElt::root_of_unity(3, 1).multiplicative_order(), Some(3));
        assert!(check_quasithm(3, 1, 3).unwrap().hypothesis_holds);
        // alpha = -1, exact order 2, n = 4
        assert_eq!(CycloElt::root_of_unity(2, 1).multiplicative_order(), Some(2));
        assert!(check_quasithm(2, 1, 4).unwrap().hypothesis_holds);
    }
}
