//! Dirichlet characters mod m with exact root-of-unity values.
//!
//! A character is stored by the exponent table a -> e(a) with
//! chi(a) = zeta_order^{e(a)}, so both exact cyclotomic evaluation and
//! numeric embedding are available from the same object.

use crate::arith::{gcd_i64, unit_group_generators};
use crate::numeric::{unit_root, MpComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    pub modulus: i64,
    /// Multiplicative order of the character.
    pub order: i64,
    /// exps[a] = Some(e) with chi(a) = zeta_order^e for units a, None else.
    exps: Vec<Option<i64>>,
}

impl DirichletChar {
    pub fn trivial(m: i64) -> Self {
        let exps = (0..m.max(1))
            .map(|a| if gcd_i64(a, m) == 1 || m == 1 { Some(0) } else { None })
            .collect();
        DirichletChar { modulus: m, order: 1, exps }
    }

    /// All characters mod m, in a deterministic order.
    pub fn all(m: i64) -> Vec<DirichletChar> {
        assert!(m >= 1);
        let gens = unit_group_generators(m);
        if gens.is_empty() {
            return vec![DirichletChar::trivial(m)];
        }
        let orders: Vec<i64> = gens.iter().map(|&(_, n)| n).collect();
        let big_l = orders.iter().fold(1i64, |acc, &n| acc / gcd_i64(acc, n) * n);
        // Discrete logarithm table: a -> exponent tuple.
        let mut dlog: Vec<Option<Vec<i64>>> = vec![None; m as usize];
        dlog[1] = Some(vec![0; gens.len()]);
        let mut frontier = vec![1i64];
        while let Some(x) = frontier.pop() {
            let dx = dlog[x as usize].clone().unwrap();
            for (i, &(g, _)) in gens.iter().enumerate() {
                let y = (x as i128 * g as i128 % m as i128) as i64;
                if dlog[y as usize].is_none() {
                    let mut d = dx.clone();
                    d[i] += 1;
                    dlog[y as usize] = Some(d);
                    frontier.push(y);
                }
            }
        }
        let mut out = vec![];
        let total: i64 = orders.iter().product();
        for mut idx in 0..total {
            let mut ts = vec![];
            for &n in &orders {
                ts.push(idx % n);
                idx /= n;
            }
            let mut exps = vec![None; m as usize];
            for a in 0..m {
                if let Some(d) = &dlog[a as usize] {
                    let mut e = 0i64;
                    for i in 0..gens.len() {
                        e = (e + d[i] % orders[i] * (ts[i] * (big_l / orders[i]) % big_l)) % big_l;
                    }
                    exps[a as usize] = Some(e.rem_euclid(big_l));
                }
            }
            // Normalise to the character's own order.
            let g = exps
                .iter()
                .flatten()
                .fold(big_l, |acc, &e| if e == 0 { acc } else { gcd_i64(acc, e) });
            let order = big_l / g;
            let exps = exps
                .into_iter()
                .map(|o| o.map(|e| (e / g).rem_euclid(order.max(1))))
                .collect();
            out.push(DirichletChar { modulus: m, order: order.max(1), exps });
        }
        out
    }

    pub fn eval_exponent(&self, a: i64) -> Option<i64> {
        if self.modulus == 1 {
            return Some(0);
        }
        self.exps[a.rem_euclid(self.modulus) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// chi(-1) as +1 / -1.
    pub fn parity(&self) -> i64 {
        if self.modulus <= 2 {
            return 1;
        }
        let e = self.eval_exponent(self.modulus - 1).unwrap();
        if (2 * e) % self.order == 0 && e != 0 {
            -1
        } else {
            1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .map(|o| o.map(|e| (self.order - e) % self.order))
            .collect();
        DirichletChar { modulus: self.modulus, order: self.order, exps }
    }

    /// Trivial on the kernel of (Z/m)* -> (Z/d)*?
    fn trivial_on_kernel(&self, d: i64) -> bool {
        let m = self.modulus;
        (0..m)
            .filter(|&a| gcd_i64(a, m) == 1 && a % d == 1 % d)
            .all(|a| self.eval_exponent(a) == Some(0))
    }

    pub fn conductor(&self) -> i64 {
        crate::arith::divisors(self.modulus)
            .into_iter()
            .find(|&d| self.trivial_on_kernel(d))
            .unwrap_or(self.modulus)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    pub fn eval_numeric(&self, a: i64, bits: u32) -> MpComplex {
        match self.eval_exponent(a) {
            None => MpComplex::zero(bits),
            Some(e) => unit_root(e, self.order, bits),
        }
    }

    /// Gauss sum G(chi) = sum_a chi(a) e^{2 pi i a / m}.
    pub fn gauss_sum(&self, bits: u32) -> MpComplex {
        let m = self.modulus;
        let mut s = MpComplex::zero(bits);
        for a in 0..m.max(1) {
            if self.eval_exponent(a).is_some() {
                let term = self.eval_numeric(a, bits).mul(&unit_root(a, m.max(1), bits));
                s = s.add(&term);
            }
        }
        if m == 1 {
            s = MpComplex::real(crate::numeric::MpFloat::from_i64(1, bits));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::MpFloat;

    #[test]
    fn character_counts_and_orthogonality() {
        for m in [1i64, 3, 4, 5, 8, 11, 12, 15] {
            let chars = DirichletChar::all(m);
            assert_eq!(chars.len() as i64, crate::arith::euler_phi(m).max(1));
            // Multiplicativity on a sample.
            for chi in &chars {
                for a in 1..m {
                    for b in 1..m {
                        if gcd_i64(a, m) == 1 && gcd_i64(b, m) == 1 {
                            let ea = chi.eval_exponent(a).unwrap();
                            let eb = chi.eval_exponent(b).unwrap();
                            let eab = chi.eval_exponent(a * b % m).unwrap();
                            assert_eq!((ea + eb) % chi.order, eab);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mod5_structure() {
        let chars = DirichletChar::all(5);
        let mut orders: Vec<i64> = chars.iter().map(|c| c.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        for c in &chars {
            assert!(c.is_trivial() || c.is_primitive());
            // Quartic characters mod 5 are odd; the quadratic one is even.
            if c.order == 4 {
                assert_eq!(c.parity(), -1);
            }
            if c.order == 2 {
                assert_eq!(c.parity(), 1);
            }
        }
    }

    #[test]
    fn conductor_of_imprimitive() {
        // mod 15 characters that factor through mod 3 or mod 5.
        let chars = DirichletChar::all(15);
        let conds: Vec<i64> = chars.iter().map(|c| c.conductor()).collect();
        assert!(conds.contains(&1) && conds.contains(&3) && conds.contains(&5));
        // Primitive mod 15 = (primitive mod 3) x (primitive mod 5) = 1 * 3.
        assert_eq!(chars.iter().filter(|c| c.is_primitive()).count(), 3);
    }

    #[test]
    fn gauss_sum_magnitude() {
        let bits = 160;
        for m in [5i64, 7, 11] {
            for chi in DirichletChar::all(m) {
                if !chi.is_primitive() {
                    continue;
                }
                let g = chi.gauss_sum(bits);
                let err = g.abs2().sub(&MpFloat::from_i64(m, bits)).abs();
                assert!(
                    err.to_f64() < 1e-30,
                    "|G(chi)|^2 != m for m={m}, got {}",
                    g.abs2().to_f64()
                );
            }
        }
    }
}
