//! Dense bivariate polynomials and resultant elimination by
//! evaluation/interpolation.

use super::field::FieldOps;
use super::poly::{interpolate, resultant_uni, UniPoly};
use super::AlgebraError;

/// Which variable a bivariate operation acts on. `X` is the first index of
/// the coefficient matrix, `Y` the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Dense bivariate polynomial; `coeffs[i][j]` is the coefficient of
/// `X^i Y^j`. Trailing zero rows and columns are trimmed so the
/// representation is canonical.
#[derive(Clone, Debug)]
pub struct BiPoly<F: FieldOps> {
    pub coeffs: Vec<Vec<F::Elem>>,
}

impl<F: FieldOps> PartialEq for BiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: FieldOps> BiPoly<F> {
    pub fn new(field: &F, coeffs: Vec<Vec<F::Elem>>) -> Self {
        let mut p = BiPoly { coeffs };
        p.normalize(field);
        p
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: vec![] }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        if field.is_zero(&c) {
            Self::zero()
        } else {
            BiPoly {
                coeffs: vec![vec![c]],
            }
        }
    }

    /// The monomial `X^i Y^j`.
    pub fn monomial(field: &F, c: F::Elem, i: usize, j: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![vec![field.zero(); j + 1]; i + 1];
        coeffs[i][j] = c;
        BiPoly { coeffs }
    }

    pub fn normalize(&mut self, field: &F) {
        // pad rows to equal length, trim zero tails
        let w = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        for row in &mut self.coeffs {
            while row.len() < w {
                row.push(field.zero());
            }
        }
        while let Some(last) = self.coeffs.last() {
            if last.iter().all(|c| field.is_zero(c)) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let mut w = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        while w > 0
            && self
                .coeffs
                .iter()
                .all(|r| field.is_zero(&r[w - 1]))
        {
            for row in &mut self.coeffs {
                row.pop();
            }
            w -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_y(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs[0].len() - 1)
        }
    }

    pub fn deg(&self, v: Var) -> Option<usize> {
        match v {
            Var::X => self.deg_x(),
            Var::Y => self.deg_y(),
        }
    }

    pub fn coeff(&self, field: &F, i: usize, j: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .coeffs
            .first()
            .map_or(0, |r| r.len())
            .max(other.coeffs.first().map_or(0, |r| r.len()));
        let mut out = vec![vec![field.zero(); cols]; rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = field.add(&self.coeff(field, i, j), &other.coeff(field, i, j));
            }
        }
        Self::new(field, out)
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: &F) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|c| field.neg(c)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let rx = self.coeffs.len() + other.coeffs.len() - 1;
        let ry = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        let mut out = vec![vec![field.zero(); ry]; rx];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, c1) in r1.iter().enumerate() {
                if field.is_zero(c1) {
                    continue;
                }
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, c2) in r2.iter().enumerate() {
                        if field.is_zero(c2) {
                            continue;
                        }
                        let t = field.mul(c1, c2);
                        out[i1 + i2][j1 + j2] = field.add(&out[i1 + i2][j1 + j2], &t);
                    }
                }
            }
        }
        Self::new(field, out)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Self::new(
            field,
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|a| field.mul(a, c)).collect())
                .collect(),
        )
    }

    /// Substitute a value for `X`, leaving a polynomial in `Y`.
    pub fn specialize_x(&self, field: &F, x0: &F::Elem) -> UniPoly<F> {
        // Horner over rows
        let mut acc: Vec<F::Elem> = vec![];
        for row in self.coeffs.iter().rev() {
            let w = acc.len().max(row.len());
            let z = field.zero();
            acc = (0..w)
                .map(|j| {
                    let prev = acc.get(j).unwrap_or(&z);
                    field.add(&field.mul(prev, x0), row.get(j).unwrap_or(&z))
                })
                .collect();
        }
        UniPoly::new(field, acc)
    }

    /// Substitute a value for `Y`, leaving a polynomial in `X`.
    pub fn specialize_y(&self, field: &F, y0: &F::Elem) -> UniPoly<F> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| UniPoly::new(field, row.clone()).eval(field, y0))
            .collect();
        UniPoly::new(field, coeffs)
    }

    pub fn specialize(&self, field: &F, v: Var, v0: &F::Elem) -> UniPoly<F> {
        match v {
            Var::X => self.specialize_x(field, v0),
            Var::Y => self.specialize_y(field, v0),
        }
    }

    pub fn eval(&self, field: &F, x0: &F::Elem, y0: &F::Elem) -> F::Elem {
        self.specialize_x(field, x0).eval(field, y0)
    }

    pub fn swap_vars(&self, field: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let rows = self.coeffs.len();
        let cols = self.coeffs[0].len();
        let mut out = vec![vec![field.zero(); rows]; cols];
        for i in 0..rows {
            for j in 0..cols {
                out[j][i] = self.coeffs[i][j].clone();
            }
        }
        Self::new(field, out)
    }

    pub fn is_symmetric(&self, field: &F) -> bool {
        *self == self.swap_vars(field)
    }

    /// Leading coefficient in the given variable, as a polynomial in the
    /// other variable.
    pub fn leading_coeff(&self, field: &F, v: Var) -> UniPoly<F> {
        match v {
            Var::X => match self.deg_x() {
                None => UniPoly::zero(),
                Some(d) => UniPoly::new(field, self.coeffs[d].clone()),
            },
            Var::Y => match self.deg_y() {
                None => UniPoly::zero(),
                Some(d) => UniPoly::new(
                    field,
                    self.coeffs.iter().map(|r| r[d].clone()).collect(),
                ),
            },
        }
    }

    /// View a univariate polynomial in `X` as a bivariate one.
    pub fn from_uni_x(field: &F, p: &UniPoly<F>) -> Self {
        Self::new(field, p.coeffs.iter().map(|c| vec![c.clone()]).collect())
    }

    /// View a univariate polynomial in `Y` as a bivariate one.
    pub fn from_uni_y(field: &F, p: &UniPoly<F>) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Self::new(field, vec![p.coeffs.clone()])
    }

    pub fn map_coeffs<G: FieldOps>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> BiPoly<G> {
        BiPoly::new(
            target,
            self.coeffs
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        )
    }
}

/// Resultant of two bivariate polynomials over the eliminated variable,
/// computed by specialising the kept variable at `bound + 1` points where
/// neither leading coefficient vanishes, taking univariate resultants, and
/// interpolating.
///
/// The degree bound is `deg_v(a) deg_w(b) + deg_w(a) deg_v(b)` for
/// eliminated `v` and kept `w`.
pub fn resultant<F: FieldOps>(
    field: &F,
    a: &BiPoly<F>,
    b: &BiPoly<F>,
    eliminate: Var,
) -> Result<UniPoly<F>, AlgebraError> {
    let keep = match eliminate {
        Var::X => Var::Y,
        Var::Y => Var::X,
    };
    let (dav, dbv) = match (a.deg(eliminate), b.deg(eliminate)) {
        (Some(x), Some(y)) if x > 0 && y > 0 => (x, y),
        _ => return Err(AlgebraError::DegenerateInput),
    };
    let daw = a.deg(keep).unwrap_or(0);
    let dbw = b.deg(keep).unwrap_or(0);
    let bound = dav * dbw + daw * dbv;
    let lca = a.leading_coeff(field, eliminate);
    let lcb = b.leading_coeff(field, eliminate);

    let mut points: Vec<(F::Elem, F::Elem)> = Vec::with_capacity(bound + 1);
    let mut i: u128 = 0;
    while points.len() < bound + 1 {
        let Some(w0) = field.nth(i) else {
            return Err(AlgebraError::NotEnoughPoints);
        };
        i += 1;
        // skip points where the specialisation drops degree
        if field.is_zero(&lca.eval(field, &w0)) || field.is_zero(&lcb.eval(field, &w0)) {
            continue;
        }
        let au = a.specialize(field, keep, &w0);
        let bu = b.specialize(field, keep, &w0);
        let r = resultant_uni(field, &au, &bu);
        points.push((w0, r));
    }
    interpolate(field, &points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FieldCtx, PrimeField};
    use crate::algebra::poly::roots;

    fn fp(p: u64) -> PrimeField {
        PrimeField { p }
    }

    #[test]
    fn linear_resultant() {
        // Res_X(X - 2, X - 5) over F_7 as constants in Y: inputs must have
        // positive X-degree, Y-degree 0; result is the constant 2 - 5 = 4.
        let f = fp(7);
        let a = BiPoly::new(&f, vec![vec![5], vec![1]]); // X + 5 = X - 2
        let b = BiPoly::new(&f, vec![vec![2], vec![1]]); // X + 2 = X - 5
        let r = resultant(&f, &a, &b, Var::X).unwrap();
        assert_eq!(r.coeffs, vec![4]);
    }

    #[test]
    fn shared_root_makes_zero() {
        let f = fp(11);
        // a = (X - Y)(X + 1), b = (X - Y)(X + 3): common factor => Res = 0
        let xmy = BiPoly::new(&f, vec![vec![0, 10], vec![1, 0]]); // X - Y
        let xp1 = BiPoly::new(&f, vec![vec![1], vec![1]]);
        let xp3 = BiPoly::new(&f, vec![vec![3], vec![1]]);
        let a = xmy.mul(&f, &xp1);
        let b = xmy.mul(&f, &xp3);
        let r = resultant(&f, &a, &b, Var::X).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degenerate_input_rejected() {
        let f = fp(7);
        let a = BiPoly::new(&f, vec![vec![1, 2]]); // degree 0 in X
        let b = BiPoly::new(&f, vec![vec![0], vec![1]]);
        assert_eq!(
            resultant(&f, &a, &b, Var::X).unwrap_err(),
            AlgebraError::DegenerateInput
        );
    }

    #[test]
    fn vanishing_characterisation_exhaustive() {
        // For p <= 31 and small degrees: Res(a,b) eliminating X vanishes at
        // y0 iff the specialisations share a root in the closure or both
        // leading coefficients vanish. Sharing a root in the closure is
        // equivalent to gcd of the specialisations being nonconstant.
        let p = 13u64;
        let ctx = FieldCtx::new(p).unwrap();
        let f = fp(p);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _trial in 0..30 {
            let mut mk = |dx: usize, dy: usize| {
                let coeffs: Vec<Vec<u64>> = (0..=dx)
                    .map(|_| (0..=dy).map(|_| rng.gen_range(0..p)).collect())
                    .collect();
                BiPoly::new(&f, coeffs)
            };
            let a = mk(2, 2);
            let b = mk(3, 1);
            if a.deg_x().map_or(true, |d| d == 0) || b.deg_x().map_or(true, |d| d == 0) {
                continue;
            }
            let r = match resultant(&f, &a, &b, Var::X) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let lca = a.leading_coeff(&f, Var::X);
            let lcb = b.leading_coeff(&f, Var::X);
            for y0 in 0..p {
                let res_zero = if r.is_zero() {
                    true
                } else {
                    f.is_zero(&r.eval(&f, &y0))
                };
                let au = a.specialize_y(&f, &y0);
                let bu = b.specialize_y(&f, &y0);
                let both_lc_vanish =
                    f.is_zero(&lca.eval(&f, &y0)) && f.is_zero(&lcb.eval(&f, &y0));
                let share = if au.is_zero() || bu.is_zero() {
                    true
                } else {
                    crate::algebra::poly::poly_gcd(&f, &au, &bu)
                        .unwrap()
                        .degree()
                        .map_or(false, |d| d > 0)
                };
                assert_eq!(
                    res_zero,
                    share || both_lc_vanish,
                    "y0={y0}, a={:?}, b={:?}",
                    a,
                    b
                );
            }
        }
        let _ = ctx;
    }

    #[test]
    fn specialization_matches_eval() {
        let f = fp(17);
        let a = BiPoly::new(
            &f,
            vec![vec![1, 2, 3], vec![0, 4, 0], vec![5, 0, 6], vec![0, 0, 7]],
        );
        for x0 in 0..17 {
            for y0 in 0..17 {
                let v1 = a.specialize_x(&f, &x0).eval(&f, &y0);
                let v2 = a.specialize_y(&f, &y0).eval(&f, &x0);
                assert_eq!(v1, v2);
            }
        }
    }

    #[test]
    fn resultant_roots_feed_common_solutions() {
        // two curves with a known intersection: a = X^2 + Y^2 - 1,
        // b = X - Y over F_13; Res_X should vanish exactly at y with
        // 2y^2 = 1.
        let p = 13u64;
        let f = fp(p);
        let a = BiPoly::new(&f, vec![vec![12, 0, 1], vec![0], vec![1]]);
        let b = BiPoly::new(&f, vec![vec![0, 12], vec![1]]);
        let r = resultant(&f, &a, &b, Var::X).unwrap();
        let rs = roots(&f, &r).unwrap();
        let expect: Vec<u64> = (0..p)
            .filter(|&y| f.is_zero(&f.sub(&f.mul(&f.add(&f.mul(&y, &y), &f.mul(&y, &y)), &1), &1)))
            .collect();
        assert_eq!(rs.iter().map(|(r, _)| *r).collect::<Vec<_>>(), expect);
    }
}
