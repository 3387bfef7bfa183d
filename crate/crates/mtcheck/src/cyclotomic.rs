//! Exact arithmetic in Q(zeta_M) modelled on Q[X]/(X^M - 1), with Galois
//! action, traces to subfields, evaluation of polynomial operators in
//! sigma-hat, and the inverse Euler operators. Reduction modulo the
//! cyclotomic polynomial happens only at comparison time, so that the
//! operator calculus can stay in the big ring.

use crate::arith::{divisors, gcd_i64};
use crate::curve::{compute_ap, CurveData};
use crate::groupring::GrQ;
use crate::linalg::QMat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Mutex;

#[derive(Clone, Debug, PartialEq)]
pub struct CycNum {
    pub level: i64,
    /// coeffs[i] multiplies zeta_level^i.
    pub coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(level: i64) -> Self {
        CycNum { level, coeffs: vec![BigRational::zero(); level as usize] }
    }

    pub fn one(level: i64) -> Self {
        Self::zeta_pow(level, 0)
    }

    pub fn zeta(level: i64) -> Self {
        Self::zeta_pow(level, 1)
    }

    pub fn zeta_pow(level: i64, e: i64) -> Self {
        let mut x = Self::zero(level);
        x.coeffs[e.rem_euclid(level) as usize] = BigRational::one();
        x
    }

    /// zeta_d as an element at this level (requires d | level).
    pub fn zeta_of_order(level: i64, d: i64) -> Self {
        assert_eq!(level % d, 0, "zeta_{d} does not live at level {level}");
        Self::zeta_pow(level, level / d)
    }

    pub fn is_zero_literal(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level);
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level);
        let m = self.level as usize;
        let mut out = vec![BigRational::zero(); m];
        for i in 0..m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[(i + j) % m] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        CycNum { level: self.level, coeffs: out }
    }

    /// Ring map to a higher level: X -> X^{target/level}.
    pub fn embed(&self, target: i64) -> Result<CycNum> {
        if target % self.level != 0 {
            return Err(Error::NotASubfield(format!(
                "cannot embed level {} into level {target}",
                self.level
            )));
        }
        let s = target / self.level;
        let mut out = CycNum::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(i as i64 * s).rem_euclid(target) as usize] += c;
            }
        }
        Ok(out)
    }

    /// Galois action sigma_a for gcd(a, level) = 1.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.level;
        assert_eq!(gcd_i64(a.rem_euclid(m), m), 1, "galois needs a unit");
        let mut out = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(i as i64 * a).rem_euclid(m) as usize] += c;
            }
        }
        out
    }

    /// The algebra endomorphism sigma-hat_t: X -> X^t (any t >= 0).
    pub fn sigma_hat(&self, t: i64) -> Self {
        let m = self.level;
        let mut out = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(i as i64 * t).rem_euclid(m) as usize] += c;
            }
        }
        out
    }

    /// Apply a polynomial sum c_i sigma-hat_ell^i.
    pub fn eval_operator(&self, poly: &[BigRational], ell: i64) -> Self {
        let mut out = Self::zero(self.level);
        let mut power = 1i64;
        for c in poly {
            if !c.is_zero() {
                out = out.add(&self.sigma_hat(power).scale(c));
            }
            power = (power as i128 * ell as i128).rem_euclid(self.level as i128) as i64;
        }
        out
    }

    /// Trace over Gal(F_level / F_d) = {sigma_a : a = 1 mod d}; the result
    /// is an element of F_d represented at this level.
    pub fn trace_to_sublevel(&self, d: i64) -> Result<CycNum> {
        if self.level % d != 0 {
            return Err(Error::NotASubfield(format!(
                "trace target level {d} does not divide {}",
                self.level
            )));
        }
        let m = self.level;
        let mut out = Self::zero(m);
        for a in 1..=m {
            if gcd_i64(a, m) == 1 && a % d == 1 % d.max(1) {
                out = out.add(&self.galois(a));
            }
        }
        Ok(out)
    }

    /// Action of an element of Q[G_level] (full cyclotomic spec).
    pub fn act_grq(&self, x: &GrQ) -> Self {
        assert_eq!(x.spec.m, self.level, "group ring level mismatch");
        assert_eq!(x.spec.order() as i64, crate::arith::euler_phi(self.level).max(1));
        let mut out = Self::zero(self.level);
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = x.spec.elements()[i].max(1);
            out = out.add(&self.galois(a).scale(c));
        }
        out
    }

    /// Remainder of the representative modulo Phi_level.
    pub fn reduce_mod_cyclotomic(&self) -> Vec<BigRational> {
        let phi = cyclotomic_polynomial(self.level);
        let deg = phi.len() - 1;
        let mut rem: Vec<BigRational> = self.coeffs.clone();
        // long division by monic phi
        for i in (deg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].clone();
            for (j, pj) in phi.iter().enumerate().take(deg) {
                let t = &c * &BigRational::from_integer(pj.clone());
                rem[i - deg + j] -= t;
            }
            rem[i] = BigRational::zero();
        }
        rem.truncate(deg.max(1));
        rem
    }

    /// Equality in the cyclotomic field Q(zeta_lcm).
    pub fn equal_in_field(&self, o: &Self) -> bool {
        let l = num_integer::lcm(self.level, o.level);
        let a = self.embed(l).unwrap();
        let b = o.embed(l).unwrap();
        a.sub(&b).reduce_mod_cyclotomic().iter().all(|c| c.is_zero())
    }

    pub fn is_zero_in_field(&self) -> bool {
        self.reduce_mod_cyclotomic().iter().all(|c| c.is_zero())
    }

    /// Numerical embedding zeta -> e^{2 pi i / level}.
    pub fn embed_numeric(&self, bits: u32) -> crate::numeric::MpComplex {
        let mut s = crate::numeric::MpComplex::zero(bits);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = crate::numeric::unit_root(i as i64, self.level, bits)
                    .mul_f(&crate::numeric::MpFloat::from_rational(c, bits));
                s = s.add(&term);
            }
        }
        s
    }
}

/// Coefficients (ascending, monic) of the M-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: i64) -> Vec<BigInt> {
    fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        // num, den monic-ish with den dividing num exactly.
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let nd = rem.len() - 1;
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let q = &c / &den[dd];
            quot[i - dd] = q.clone();
            for j in 0..=dd {
                let t = &q * &den[j];
                rem[i - dd + j] -= t;
            }
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        quot
    }
    let mut cache: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(m) {
        // X^d - 1 divided by product of Phi_e for proper divisors e of d.
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut phi = num;
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let pe = cache.get(&e).unwrap().clone();
            phi = poly_div_exact(&phi, &pe);
        }
        cache.insert(d, phi);
    }
    cache.remove(&m).unwrap()
}

/// The Euler factor polynomial Eul_ell(X) = 1 - (a_ell/ell) X + (1_N(ell)/ell) X^2
/// as coefficient list.
pub fn euler_poly(curve: &CurveData, ell: i64) -> Vec<BigRational> {
    let a = compute_ap(curve, ell).expect("a_ell");
    vec![
        BigRational::one(),
        crate::arith::rat(-a, ell),
        crate::arith::rat(curve.one_n(ell), ell),
    ]
}

/// Matrix of Eul_ell(sigma-hat_ell) acting on Q[X]/(X^M - 1) in the monomial
/// basis.
pub fn euler_operator_matrix(curve: &CurveData, ell: i64, m: i64) -> QMat {
    let poly = euler_poly(curve, ell);
    let n = m as usize;
    let mut mat = QMat::zero(n, n);
    for j in 0..n {
        let mut power = 1i64;
        for c in &poly {
            if !c.is_zero() {
                let target = (j as i64 * power).rem_euclid(m) as usize;
                mat[(target, j)] += c.clone();
            }
            power = (power * ell).rem_euclid(m);
        }
    }
    mat
}

static EULER_INV_CACHE: std::sync::OnceLock<Mutex<BTreeMap<(String, i64, i64), QMat>>> =
    std::sync::OnceLock::new();

/// Inverse of the Euler operator on Q[X]/(X^M - 1), certified by multiplying
/// back to the identity, and cached per (curve, ell, M).
pub fn euler_inverse_operator(curve: &CurveData, ell: i64, m: i64) -> Result<QMat> {
    let key = (curve.label.clone(), ell, m);
    let cache = EULER_INV_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let fwd = euler_operator_matrix(curve, ell, m);
    let inv = fwd
        .inverse()
        .ok_or_else(|| Error::SingularOperator(format!("Eul_{ell} singular at level {m}")))?;
    if inv.mul(&fwd) != QMat::identity(m as usize) {
        return Err(Error::SingularOperator("inverse certificate failed".into()));
    }
    cache.lock().unwrap().insert(key, inv.clone());
    Ok(inv)
}

pub fn apply_qmat(mat: &QMat, x: &CycNum) -> CycNum {
    let v = mat.apply(&x.coeffs);
    CycNum { level: x.level, coeffs: v }
}

/// (Eul_ell(sigma-hat)^{-1}(X)) evaluated at zeta_M: the operator inverse
/// applied to the monomial X, read at level M.
pub fn euler_inverse_of_x(curve: &CurveData, ell: i64, m: i64) -> Result<CycNum> {
    let inv = euler_inverse_operator(curve, ell, m)?;
    Ok(apply_qmat(&inv, &CycNum::zeta(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::curve::curve_11a1;

    #[test]
    fn ring_and_embedding() {
        let x = CycNum::zeta(12);
        let y = x.mul(&x).mul(&x); // zeta_4
        assert!(y.equal_in_field(&CycNum::zeta(4).embed(12).unwrap()));
        // zeta_12^12 = 1
        let mut z = CycNum::one(12);
        for _ in 0..12 {
            z = z.mul(&x);
        }
        assert!(z.equal_in_field(&CycNum::one(12)));
        // 1 + zeta_3 + zeta_3^2 = 0 in the field but not literally.
        let s = CycNum::one(3)
            .add(&CycNum::zeta(3))
            .add(&CycNum::zeta_pow(3, 2));
        assert!(!s.is_zero_literal());
        assert!(s.is_zero_in_field());
    }

    #[test]
    fn numeric_embedding_consistency() {
        let bits = 160;
        let mut state = 11u64;
        let mut step = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 40) % 13) as i64 - 6
        };
        for m in [12i64, 35, 60] {
            let mk = |f: &mut dyn FnMut() -> i64| CycNum {
                level: m,
                coeffs: (0..m).map(|_| rat(f(), 1)).collect(),
            };
            for _ in 0..20 {
                let a = mk(&mut step);
                let b = mk(&mut step);
                let exact = a.mul(&b).embed_numeric(bits);
                let approx = a.embed_numeric(bits).mul(&b.embed_numeric(bits));
                let err = exact.sub(&approx).abs().to_f64();
                assert!(err < 1e-10, "embedding mismatch at m = {m}: {err}");
            }
        }
    }

    #[test]
    fn galois_and_sigma_hat() {
        let x = CycNum::zeta(15);
        assert_eq!(x.sigma_hat(2), x.galois(2));
        // sigma-hat_ell(zeta) = zeta^ell also for non-units.
        assert_eq!(x.sigma_hat(5), CycNum::zeta_pow(15, 5));
        // Galois action respects multiplication.
        let y = CycNum::zeta_pow(15, 7).add(&CycNum::one(15));
        assert_eq!(x.mul(&y).galois(4), x.galois(4).mul(&y.galois(4)));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_p = 1 + X + ... + X^{p-1}
        assert_eq!(cyclotomic_polynomial(5), vec![BigInt::from(1); 5]);
    }

    #[test]
    fn trace_cases() {
        // Trivial extension.
        let x = CycNum::zeta(12).add(&CycNum::one(12).scale(&rat(2, 1)));
        assert!(x.trace_to_sublevel(12).unwrap().equal_in_field(&x));
        // ell coprime to m: Tr_{15/5}(zeta_15) = -sigma_3^{-1} zeta_5 = -zeta_5^2.
        let t = CycNum::zeta(15).trace_to_sublevel(5).unwrap();
        let expect = CycNum::zeta_pow(5, 2).neg().embed(15).unwrap();
        assert!(t.equal_in_field(&expect));
        // ell | m (degree ell): Tr_{45/15}(zeta_5) = 3 zeta_5.
        let t2 = CycNum::zeta_of_order(45, 5).trace_to_sublevel(15).unwrap();
        let expect2 = CycNum::zeta_of_order(45, 5).scale(&rat(3, 1));
        assert!(t2.equal_in_field(&expect2));
        // Deeper ramification kills the trace: Tr_{45/15}(zeta_45) = 0... direct sum.
        let t3 = CycNum::zeta(45).trace_to_sublevel(15).unwrap();
        assert!(t3.is_zero_in_field());
        // Degree ell - 1 on invariants: Tr_{15/5}(zeta_5) = 2 zeta_5.
        let t4 = CycNum::zeta_of_order(15, 5).trace_to_sublevel(5).unwrap();
        assert!(t4.equal_in_field(&CycNum::zeta_of_order(15, 5).scale(&rat(2, 1))));
    }

    #[test]
    fn euler_operator_inverse_certificate() {
        let e = curve_11a1();
        for (ell, m) in [(2i64, 15i64), (3, 20), (5, 12), (11, 60), (7, 49)] {
            let fwd = euler_operator_matrix(&e, ell, m);
            let inv = euler_inverse_operator(&e, ell, m).unwrap();
            assert_eq!(inv.mul(&fwd), QMat::identity(m as usize), "ell={ell}, m={m}");
            assert_eq!(fwd.mul(&inv), QMat::identity(m as usize));
        }
    }

    #[test]
    fn euler_inverse_descends_to_field_action() {
        // For ell coprime to M the inverse acts on Q(zeta_M) as multiplication
        // by Eul_ell(sigma_ell)^{-1}: check Eul(sigma)(inv(X)(zeta)) = zeta.
        let e = curve_11a1();
        let (ell, m) = (2i64, 15i64);
        let y = euler_inverse_of_x(&e, ell, m).unwrap();
        let eul = euler_poly(&e, ell);
        // Apply Eul_ell(sigma_ell) through the Galois action on the field.
        let back = y
            .galois(1)
            .scale(&eul[0])
            .add(&y.galois(ell).scale(&eul[1]))
            .add(&y.galois(ell * ell % m).scale(&eul[2]));
        assert!(back.equal_in_field(&CycNum::zeta(m)));
    }

    #[test]
    fn scalar_case_matches_formula() {
        // M = 1: the operator is the scalar Eul_ell(1) = (ell - a + 1_N)/ell.
        let e = curve_11a1();
        let inv = euler_inverse_operator(&e, 5, 1).unwrap();
        assert_eq!(inv[(0, 0)], rat(5, 5 - 1 + 1));
    }
}
