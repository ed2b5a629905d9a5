//! Univariate polynomials over a prime field, just enough to split a
//! characteristic polynomial into pairwise coprime factors.

use crate::field::Field;
use crate::linalg::Matrix;

/// Dense polynomial, coefficients from the constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }

    /// `x + a`
    pub fn linear(a: F) -> Self {
        Poly::new(vec![a, F::one()])
    }

    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().copied().unwrap_or_else(F::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().unwrap();
        Poly::new(self.coeffs.iter().map(|&c| c * inv).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or_else(F::zero)
                        + o.coeffs.get(i).copied().unwrap_or_else(F::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or_else(F::zero)
                        - o.coeffs.get(i).copied().unwrap_or_else(F::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: F) -> Self {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * inv;
            q[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= c * dc;
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one().rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

/// Characteristic polynomial `det(xI - m)` via Hessenberg reduction.
pub fn charpoly<F: Field>(m: &Matrix<F>) -> Poly<F> {
    assert!(m.is_square());
    let n = m.rows();
    let mut h = m.clone();
    // reduce to upper Hessenberg form by similarity transforms
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| !h[(i, col)].is_zero()) else {
            continue;
        };
        if piv != col + 1 {
            h.swap_rows(piv, col + 1);
            h.swap_cols(piv, col + 1);
        }
        let t = h[(col + 1, col)].inv().unwrap();
        for i in col + 2..n {
            let u = h[(i, col)] * t;
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h[(col + 1, j)];
                h[(i, j)] -= u * v;
            }
            for j in 0..n {
                let v = h[(j, i)];
                h[(j, col + 1)] += u * v;
            }
        }
    }
    let mut p: Vec<Poly<F>> = vec![Poly::one()];
    for k in 0..n {
        let mut next = Poly::linear(-h[(k, k)]).mul(&p[k]);
        let mut prod = F::one();
        for i in (0..k).rev() {
            prod *= h[(i + 1, i)];
            let c = h[(i, k)] * prod;
            if !c.is_zero() {
                next = next.sub(&p[i].scale(c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// Splits `f` into pairwise coprime monic factors, each a power-free product of
/// irreducibles. Linear factors are separated individually; irreducible factors
/// of equal degree `d > 1` stay grouped (distinct-degree factorisation).
pub fn coprime_factors<F: Field>(f: &Poly<F>) -> Vec<Poly<F>> {
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let p = F::CHARACTERISTIC;
    let d = f.derivative();
    // degrees stay below p, so f' != 0 and the square-free part is f / gcd(f, f')
    let g = f.gcd(&d);
    let mut s = f.div_rem(&g).0.monic();

    let mut groups: Vec<(Poly<F>, usize)> = Vec::new();
    let mut w = Poly::x();
    let mut i = 1;
    while s.deg() >= 2 * i {
        w = w.pow_mod(p, &s);
        let g = s.gcd(&w.sub(&Poly::x()));
        if g.deg() > 0 {
            s = s.div_rem(&g).0.monic();
            w = w.rem(&s);
            groups.push((g, i));
        }
        i += 1;
    }
    if s.deg() > 0 {
        let d = s.deg();
        groups.push((s, d));
    }

    let mut out = Vec::new();
    for (g, deg) in groups {
        if deg == 1 {
            split_linear(&g, &mut out);
        } else {
            out.push(g);
        }
    }
    out.sort_by_key(|q| q.coeffs.iter().map(|c| c.to_u64()).collect::<Vec<_>>());
    out
}

/// Equal-degree splitting of a product of distinct linear factors.
fn split_linear<F: Field>(g: &Poly<F>, out: &mut Vec<Poly<F>>) {
    if g.deg() <= 1 {
        out.push(g.monic());
        return;
    }
    let half = (F::CHARACTERISTIC - 1) / 2;
    for a in 0..F::CHARACTERISTIC {
        let t = Poly::linear(F::from_i64(a as i64)).pow_mod(half, g).sub(&Poly::one());
        let h = g.gcd(&t);
        if h.deg() > 0 && h.deg() < g.deg() {
            let rest = g.div_rem(&h).0.monic();
            split_linear(&h, out);
            split_linear(&rest, out);
            return;
        }
    }
    unreachable!("a product of distinct linear factors always splits");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<101>;

    fn p(c: &[i64]) -> Poly<F> {
        Poly::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let m = Matrix::<F>::from_rows(&[
            vec![1, 2, 0, 4],
            vec![3, 0, 5, 1],
            vec![0, 7, 2, 2],
            vec![1, 1, 1, 9],
        ]);
        let cp = charpoly(&m);
        assert_eq!(cp.degree(), Some(4));
        for lam in 0..20 {
            let l = F::from_i64(lam);
            let shifted = Matrix::identity(4).scale(l).sub(&m);
            assert_eq!(cp.eval(l), shifted.determinant(), "lambda = {lam}");
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn factors_are_coprime_and_split_roots() {
        // (x-1)^2 (x-2) (x^2+1) over F_101; -1 is a square mod 101 (101 = 1 mod 4)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-2, 1])).mul(&p(&[1, 0, 1]));
        let fs = coprime_factors(&f);
        assert!(fs.iter().all(|g| g.degree() == Some(1)));
        assert_eq!(fs.len(), 4);
        // x^2 + 2 is irreducible mod 101 iff -2 is a non-residue; 101 = 5 mod 8 so it is
        let g = p(&[2, 0, 1]).mul(&p(&[-3, 1]));
        let fs = coprime_factors(&g);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&p(&[2, 0, 1])));
    }
}
