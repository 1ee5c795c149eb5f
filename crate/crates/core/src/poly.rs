//! Sparse multivariate polynomials and determinant expansions over them.
//!
//! The symbolic determinant and the symbolic characteristic polynomial are
//! both computed here by expanding over a polynomial ring, so that "is this
//! identically zero" becomes an exact question about a finite term map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Ring;

/// Exponent vector, one entry per indeterminate.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero_in(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The indeterminate `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero_in(nvars);
        p.add_term(e, R::one());
        p
    }

    /// `Σ coeffs[i] · x_i`.
    pub fn linear(coeffs: &[R]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero_in(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u32]) -> R {
        self.terms.get(mono).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, c: R) {
        debug_assert_eq!(mono.len(), self.nvars);
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_negligible() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut p = Self::zero_in(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone() * k.clone());
        }
        p
    }

    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes values for the first `point.len()` indeterminates, leaving
    /// a polynomial in the remaining ones.
    pub fn partial_eval(&self, point: &[R]) -> Self {
        let k = point.len();
        assert!(k <= self.nvars);
        let mut p = Self::zero_in(self.nvars - k);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            p.add_term(m[k..].to_vec(), t);
        }
        p
    }

    /// Coefficients of a univariate polynomial in ascending order.
    pub fn univariate_coeffs(&self) -> Vec<R> {
        assert_eq!(self.nvars, 1);
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![R::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m[0] as usize] = c.clone();
        }
        out
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&R) -> T) -> MultiPoly<T> {
        let mut p = MultiPoly::zero_in(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, R::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String
    where
        R: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if vars.is_empty() {
                parts.push(format!("{c}"));
            } else if c.is_one() {
                parts.push(vars.join("*"));
            } else {
                parts.push(format!("({c})*{}", vars.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<'a, R: Ring> Add<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn add(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a, R: Ring> Sub<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn sub(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<'a, R: Ring> Mul<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn mul(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = MultiPoly::zero_in(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                p.add_term(m, ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn neg(self) -> MultiPoly<R> {
        let mut p = MultiPoly::zero_in(self.nvars);
        for (m, c) in self.terms {
            p.add_term(m, -c);
        }
        p
    }
}

/// Determinant by Laplace expansion along rows, memoised over column
/// subsets. Needs no division, so it works over any commutative ring; cost is
/// `O(2^n · n)` ring operations.
pub fn laplace_det<R: Ring>(m: &[Vec<MultiPoly<R>>], nvars: usize) -> MultiPoly<R> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::constant(nvars, R::one());
    }
    assert!(n < 64, "matrix too large for subset expansion");
    // layer[mask] = signed sum over injections rows 0..r -> columns in mask
    let mut layer: HashMap<u64, MultiPoly<R>> = HashMap::new();
    layer.insert(0, MultiPoly::constant(nvars, R::one()));
    for row in m {
        assert_eq!(row.len(), n);
        let mut next: HashMap<u64, MultiPoly<R>> = HashMap::new();
        for (mask, acc) in &layer {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let term = acc * entry;
                let term = if above % 2 == 1 { -term } else { term };
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| MultiPoly::zero_in(nvars));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
        if layer.is_empty() {
            return MultiPoly::zero_in(nvars);
        }
    }
    layer
        .remove(&((1u64 << n) - 1))
        .unwrap_or_else(|| MultiPoly::zero_in(nvars))
}

/// Pfaffian of a skew-symmetric matrix, expanding along the first remaining
/// index. `det = Pf²`, and the expansion touches far fewer subsets than a
/// full determinant.
pub fn pfaffian<R: Ring>(m: &[Vec<MultiPoly<R>>], nvars: usize) -> MultiPoly<R> {
    let n = m.len();
    if n % 2 == 1 {
        return MultiPoly::zero_in(nvars);
    }
    assert!(n < 64, "matrix too large for subset expansion");
    let mut memo: HashMap<u64, MultiPoly<R>> = HashMap::new();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    pf_rec(m, nvars, full, &mut memo)
}

fn pf_rec<R: Ring>(
    m: &[Vec<MultiPoly<R>>],
    nvars: usize,
    set: u64,
    memo: &mut HashMap<u64, MultiPoly<R>>,
) -> MultiPoly<R> {
    if set == 0 {
        return MultiPoly::constant(nvars, R::one());
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & !(1 << i);
    let mut acc = MultiPoly::zero_in(nvars);
    // position of j among the remaining indices decides the sign
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = &m[i][j];
        if !entry.is_zero() {
            let sub = pf_rec(m, nvars, rest & !(1 << j), memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        pos += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rational;
    use num_bigint::BigInt;

    type P = MultiPoly<Rational>;

    fn c(n: i64) -> P {
        P::constant(2, rat(n))
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.eval(&[rat(3), rat(2)]), rat(5));
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn laplace_matches_numeric_det() {
        // [[x, 1, 0], [2, y, 1], [0, 3, x]]
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let m = vec![
            vec![x.clone(), c(1), c(0)],
            vec![c(2), y.clone(), c(1)],
            vec![c(0), c(3), x.clone()],
        ];
        let d = laplace_det(&m, 2);
        // x(xy - 3) - 1(2x) = x^2 y - 5x
        let expect = &(&(&x * &x) * &y) - &x.scale(&rat(5));
        assert_eq!(d, expect);
    }

    #[test]
    fn pfaffian_squared_is_det() {
        let vars: Vec<MultiPoly<BigInt>> = (0..3).map(|i| MultiPoly::var(3, i)).collect();
        let z = MultiPoly::<BigInt>::zero_in(3);
        // generic 4x4 skew matrix with entries a, b, c, a+b, b, c
        let e = [
            vars[0].clone(),
            vars[1].clone(),
            vars[2].clone(),
            &vars[0] + &vars[1],
            vars[1].clone(),
            vars[2].clone(),
        ];
        let mut m = vec![vec![z.clone(); 4]; 4];
        let pairs = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
        for ((i, j), x) in pairs.zip(&e) {
            m[i][j] = x.clone();
            m[j][i] = -x.clone();
        }
        let pf = pfaffian(&m, 3);
        // Pf = m01 m23 - m02 m13 + m03 m12
        let expect = &(&(&e[0] * &e[5]) - &(&e[1] * &e[4])) + &(&e[2] * &e[3]);
        assert_eq!(pf, expect);
        assert_eq!(&pf * &pf, laplace_det(&m, 3));
    }

    #[test]
    fn odd_pfaffian_vanishes() {
        let m = vec![vec![MultiPoly::<BigInt>::zero_in(1); 3]; 3];
        assert!(pfaffian(&m, 1).is_zero());
        assert_eq!(pfaffian(&[], 1), MultiPoly::constant(1, BigInt::from(1)));
    }
}
