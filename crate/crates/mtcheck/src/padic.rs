//! p-adic numbers with per-value precision tracking: x = p^val * unit with
//! the unit known modulo p^prec, so the absolute precision is val + prec.
//! Arithmetic propagates worst-case precision loss; "certified" predicates
//! only ever consult the tracked bounds.

use crate::arith::big_valuation;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct PadicNum {
    pub p: i64,
    /// Valuation of the value if `unit` is nonzero; for a (known-)zero the
    /// field records the absolute precision: x = 0 mod p^val.
    pub val: i64,
    /// Unit part mod p^prec (coprime to p), or zero.
    pub unit: BigInt,
    /// Relative precision of the unit.
    pub prec: u32,
}

impl PadicNum {
    pub fn zero_at(p: i64, abs_prec: i64) -> Self {
        PadicNum { p, val: abs_prec, unit: BigInt::zero(), prec: 0 }
    }

    pub fn is_known_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Absolute precision: the value is known modulo p^{abs_prec()}.
    pub fn abs_prec(&self) -> i64 {
        if self.is_known_zero() {
            self.val
        } else {
            self.val + self.prec as i64
        }
    }

    fn pk(&self, k: u32) -> BigInt {
        BigInt::from(self.p).pow(k)
    }

    fn normalise(p: i64, mut x: BigInt, mut val: i64, abs_prec: i64) -> Self {
        if abs_prec <= val {
            return Self::zero_at(p, abs_prec);
        }
        let modulus = BigInt::from(p).pow((abs_prec - val) as u32);
        x = ((&x % &modulus) + &modulus) % &modulus;
        if x.is_zero() {
            return Self::zero_at(p, abs_prec);
        }
        let extra = big_valuation(&x, p).unwrap() as i64;
        if extra > 0 {
            x /= BigInt::from(p).pow(extra as u32);
            val += extra;
            if abs_prec <= val {
                return Self::zero_at(p, abs_prec);
            }
            let m2 = BigInt::from(p).pow((abs_prec - val) as u32);
            x %= &m2;
            if x.is_zero() {
                return Self::zero_at(p, abs_prec);
            }
        }
        PadicNum { p, val, unit: x, prec: (abs_prec - val) as u32 }
    }

    pub fn from_rational(x: &BigRational, p: i64, prec: u32) -> Self {
        if x.is_zero() {
            return Self::zero_at(p, prec as i64);
        }
        let vn = big_valuation(x.numer(), p).unwrap() as i64;
        let vd = big_valuation(x.denom(), p).unwrap() as i64;
        let val = vn - vd;
        let modulus = BigInt::from(p).pow(prec);
        let nu = x.numer() / BigInt::from(p).pow(vn as u32);
        let de = x.denom() / BigInt::from(p).pow(vd as u32);
        let dinv = mod_inverse(&de, &modulus);
        let unit = ((nu * dinv) % &modulus + &modulus) % &modulus;
        PadicNum { p, val, unit, prec }
    }

    pub fn from_i64(x: i64, p: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(x)), p, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p);
        let abs = self.abs_prec().min(o.abs_prec());
        if self.is_known_zero() && o.is_known_zero() {
            return Self::zero_at(self.p, abs);
        }
        let base = self.val.min(o.val).min(abs);
        let lift = |x: &Self| -> BigInt {
            if x.is_known_zero() {
                BigInt::zero()
            } else {
                &x.unit * x.pk((x.val - base) as u32)
            }
        };
        let sum = lift(self) + lift(o);
        Self::normalise(self.p, sum, base, abs)
    }

    pub fn neg(&self) -> Self {
        if self.is_known_zero() {
            return self.clone();
        }
        let m = self.pk(self.prec);
        PadicNum { p: self.p, val: self.val, unit: (&m - &self.unit) % &m, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p);
        if self.is_known_zero() || o.is_known_zero() {
            // 0 (mod p^a) * (p^v u mod ...) is 0 mod p^{a + v'} with v' the
            // minimal valuation of the other side.
            let (z, other) = if self.is_known_zero() { (self, o) } else { (o, self) };
            let vmin = if other.is_known_zero() { other.val } else { other.val };
            return Self::zero_at(self.p, z.val + vmin);
        }
        let prec = self.prec.min(o.prec);
        let m = self.pk(prec);
        PadicNum {
            p: self.p,
            val: self.val + o.val,
            unit: (&self.unit * &o.unit) % &m,
            prec,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_known_zero(), "division by (indistinguishable-from-)zero");
        let prec = if self.is_known_zero() { o.prec } else { self.prec.min(o.prec) };
        if self.is_known_zero() {
            return Self::zero_at(self.p, self.val - o.val);
        }
        let m = self.pk(prec);
        let inv = mod_inverse(&o.unit, &m);
        PadicNum {
            p: self.p,
            val: self.val - o.val,
            unit: (&self.unit * inv) % &m,
            prec,
        }
    }

    pub fn mul_rational(&self, c: &BigRational, prec: u32) -> Self {
        self.mul(&Self::from_rational(c, self.p, prec))
    }

    /// Certified lower bound on the valuation.
    pub fn val_at_least(&self, bound: i64) -> bool {
        if self.is_known_zero() {
            self.val >= bound
        } else {
            self.val >= bound
        }
    }

    /// Is "valuation >= bound" decidable at the current precision?
    /// (A known-zero only certifies val >= abs_prec.)
    pub fn certifies(&self, bound: i64) -> bool {
        if self.is_known_zero() {
            self.abs_prec() >= bound
        } else {
            true
        }
    }

    /// Teichmueller representative of j mod p, to the given precision.
    pub fn teichmuller(j: i64, p: i64, prec: u32) -> Self {
        assert!(j.rem_euclid(p) != 0);
        let m = BigInt::from(p).pow(prec);
        let mut x = BigInt::from(j.rem_euclid(p));
        // Iterate x -> x^p until stable mod p^prec.
        for _ in 0..(prec + 2) {
            let next = x.modpow(&BigInt::from(p), &m);
            if next == x {
                break;
            }
            x = next;
        }
        PadicNum { p, val: 0, unit: x, prec }
    }

    /// Binomial coefficient C(self, l) = self (self-1) ... (self-l+1) / l!.
    pub fn binomial(&self, l: u64) -> Self {
        let p = self.p;
        let prec = self.prec.max(4);
        let mut acc = PadicNum::from_i64(1, p, prec);
        let mut factor = self.clone();
        let mut fact = BigRational::one();
        for i in 0..l {
            acc = acc.mul(&factor);
            factor = factor.sub(&PadicNum::from_i64(1, p, prec));
            fact *= BigRational::from_integer(BigInt::from(i + 1));
        }
        acc.div(&PadicNum::from_rational(&fact, p, prec))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = num_integer::Integer::extended_gcd(&(((a % m) + m) % m), m);
    assert!(e.gcd.is_one(), "not a unit");
    ((e.x % m) + m) % m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn representation_and_ops() {
        let p = 7;
        let a = PadicNum::from_rational(&rat(49, 3), p, 6); // val 2
        assert_eq!(a.val, 2);
        let b = PadicNum::from_rational(&rat(1, 7), p, 6); // val -1
        assert_eq!(b.val, -1);
        let prod = a.mul(&b);
        assert_eq!(prod.val, 1);
        // (49/3) * (1/7) = 7/3; check against direct conversion.
        let direct = PadicNum::from_rational(&rat(7, 3), p, 6);
        assert_eq!(prod.unit, direct.unit % BigInt::from(7i64.pow(prod.prec)));
    }

    #[test]
    fn cancellation_tracks_precision() {
        let p = 5;
        let a = PadicNum::from_rational(&rat(26, 1), p, 4); // 26 = 1 + 5^2
        let b = PadicNum::from_rational(&rat(1, 1), p, 4);
        let d = a.sub(&b); // 25: val 2, known mod 5^4
        assert_eq!(d.val, 2);
        assert_eq!(d.abs_prec(), 4);
        // Subtracting equal values yields a certified zero mod 5^4.
        let z = a.sub(&a);
        assert!(z.is_known_zero());
        assert_eq!(z.abs_prec(), 4);
    }

    #[test]
    fn teichmuller_fixed_points() {
        let p = 7;
        for j in 1..7 {
            let t = PadicNum::teichmuller(j, p, 10);
            let m = BigInt::from(7i64).pow(10);
            assert_eq!(t.unit.modpow(&BigInt::from(7 - 1), &m), BigInt::one(), "tau({j})^6 != 1");
            assert_eq!((&t.unit % 7i64 + 7) % 7, BigInt::from(j));
        }
        assert_eq!(PadicNum::teichmuller(1, 7, 8).unit, BigInt::one());
    }

    #[test]
    fn binomial_valuations() {
        // C(tau(2) 7^2, 3): ord bound i - ord(l) = 2.
        let p = 7;
        let t = PadicNum::teichmuller(2, p, 12);
        let delta = t.mul(&PadicNum::from_i64(49, p, 12));
        let b = delta.binomial(3);
        assert!(b.val >= 2, "val = {}", b.val);
        // Integer binomials agree with the exact value.
        let six = PadicNum::from_i64(6, p, 10);
        let b2 = six.binomial(2);
        let expect = PadicNum::from_i64(15, p, 8);
        assert_eq!(b2.val, expect.val);
        assert_eq!(&b2.unit % 7i64.pow(6), &expect.unit % 7i64.pow(6));
    }
}
