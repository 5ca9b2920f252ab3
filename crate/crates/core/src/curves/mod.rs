//! Elliptic-curve machinery at desk scale: Legendre and short Weierstrass
//! models, exact point counting by character sums, division polynomials,
//! Vélu isogenies, supersingularity classification, base-curve search, and
//! the deterministic non-backtracking 2-isogeny walk.

pub mod velu;

use crate::algebra::field::{FieldCtx, FieldOps, Fp2};
use crate::algebra::poly::UniPoly;
use crate::algebra::AlgebraError;
use crate::hasse::HassePoly;
use crate::rng;
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveError {
    /// Singular model, or a Legendre parameter in `{0, 1}`.
    InvalidModel,
    /// Point counting beyond the brute-force gate.
    TooLarge { size: u64, bound: u64 },
    /// Division polynomial at the field characteristic.
    EllEqualsP,
    /// Torsion of the requested level lives in an extension beyond the
    /// configured degree bound.
    ExtensionTooLarge { needed: usize, bound: usize },
    /// Walk started at an ordinary j-invariant.
    NotSupersingularStart,
    /// A walk step found a degenerate neighbor multiset.
    RepeatedRootAtStep(usize),
    /// Base-curve search ran out of trials.
    SearchExhausted { trials: u64 },
    Algebra(AlgebraError),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::InvalidModel => write!(f, "invalid curve model"),
            CurveError::TooLarge { size, bound } => {
                write!(f, "field size {size} exceeds counting bound {bound}")
            }
            CurveError::EllEqualsP => write!(f, "torsion level equals the characteristic"),
            CurveError::ExtensionTooLarge { needed, bound } => {
                write!(f, "torsion field degree {needed} exceeds bound {bound}")
            }
            CurveError::NotSupersingularStart => write!(f, "walk must start supersingular"),
            CurveError::RepeatedRootAtStep(n) => {
                write!(f, "degenerate neighbor multiset at step {n}")
            }
            CurveError::SearchExhausted { trials } => {
                write!(f, "no supersingular curve found in {trials} trials")
            }
            CurveError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CurveError {}

impl From<AlgebraError> for CurveError {
    fn from(e: AlgebraError) -> Self {
        CurveError::Algebra(e)
    }
}

/// A curve over `F_{p^2}` in Legendre or short Weierstrass form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveModel {
    /// `y^2 = x(x-1)(x-lambda)`.
    Legendre { lambda: Fp2 },
    /// `y^2 = x^3 + a x + b`.
    ShortW { a: Fp2, b: Fp2 },
}

impl CurveModel {
    pub fn legendre(ctx: &FieldCtx, lambda: Fp2) -> Result<Self, CurveError> {
        if lambda.is_zero() || lambda == Fp2::from_base(1) {
            return Err(CurveError::InvalidModel);
        }
        let _ = ctx;
        Ok(CurveModel::Legendre { lambda })
    }

    pub fn short_w(ctx: &FieldCtx, a: Fp2, b: Fp2) -> Result<Self, CurveError> {
        // 4a^3 + 27b^2 != 0
        let a3 = ctx.mul2(ctx.mul2(a, a), a);
        let b2 = ctx.mul2(b, b);
        let disc = ctx.add2(ctx.scale2(4, a3), ctx.scale2(27, b2));
        if disc.is_zero() {
            return Err(CurveError::InvalidModel);
        }
        Ok(CurveModel::ShortW { a, b })
    }

    /// Coefficients of the cubic `f(x) = x^3 + a2 x^2 + a4 x + a6` with
    /// `y^2 = f(x)`.
    pub fn cubic(&self, ctx: &FieldCtx) -> (Fp2, Fp2, Fp2) {
        match *self {
            CurveModel::Legendre { lambda } => {
                // x(x-1)(x-l) = x^3 - (1+l)x^2 + l x
                let a2 = ctx.neg2(ctx.add2(Fp2::from_base(1), lambda));
                (a2, lambda, Fp2::ZERO)
            }
            CurveModel::ShortW { a, b } => (Fp2::ZERO, a, b),
        }
    }
}

/// j-invariant of a model: `2^8 (l^2-l+1)^3 / (l^2 (l-1)^2)` for Legendre,
/// `1728 * 4a^3 / (4a^3 + 27b^2)` for short Weierstrass.
pub fn j_invariant(ctx: &FieldCtx, model: &CurveModel) -> Result<Fp2, CurveError> {
    match *model {
        CurveModel::Legendre { lambda } => {
            let one = Fp2::from_base(1);
            if lambda.is_zero() || lambda == one {
                return Err(CurveError::InvalidModel);
            }
            let l2 = ctx.mul2(lambda, lambda);
            let num_base = ctx.add2(ctx.sub2(l2, lambda), one);
            let num3 = ctx.mul2(ctx.mul2(num_base, num_base), num_base);
            let num = ctx.scale2(256 % ctx.p, num3);
            let lm1 = ctx.sub2(lambda, one);
            let den = ctx.mul2(l2, ctx.mul2(lm1, lm1));
            let dinv = ctx.inv2(den).ok_or(CurveError::InvalidModel)?;
            Ok(ctx.mul2(num, dinv))
        }
        CurveModel::ShortW { a, b } => {
            let a3 = ctx.mul2(ctx.mul2(a, a), a);
            let four_a3 = ctx.scale2(4, a3);
            let b2 = ctx.mul2(b, b);
            let disc = ctx.add2(four_a3, ctx.scale2(27, b2));
            let dinv = ctx.inv2(disc).ok_or(CurveError::InvalidModel)?;
            Ok(ctx.mul2(ctx.scale2(1728 % ctx.p, four_a3), dinv))
        }
    }
}

/// A short Weierstrass model with the given j-invariant: `y^2 = x^3 + 1`
/// for `j = 0`, `y^2 = x^3 + x` for `j = 1728`, else the standard
/// `a = 3j(1728-j)`, `b = 2j(1728-j)^2`.
pub fn curve_from_j(ctx: &FieldCtx, j: Fp2) -> CurveModel {
    let j1728 = Fp2::from_base(1728 % ctx.p);
    if j.is_zero() {
        return CurveModel::ShortW {
            a: Fp2::ZERO,
            b: Fp2::from_base(1),
        };
    }
    if j == j1728 {
        return CurveModel::ShortW {
            a: Fp2::from_base(1),
            b: Fp2::ZERO,
        };
    }
    let t = ctx.sub2(j1728, j);
    let a = ctx.mul2(ctx.scale2(3, j), t);
    let b = ctx.mul2(ctx.scale2(2, j), ctx.mul2(t, t));
    CurveModel::ShortW { a, b }
}

/// Options gating the brute-force point counters.
#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub brute_bound: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            brute_bound: 1 << 24,
        }
    }
}

/// Exact `#E(F_{p^k})` for `k in {1, 2}` by a quadratic-character sum over
/// the x-line, with a precomputed square table.
pub fn count_points(
    ctx: &FieldCtx,
    model: &CurveModel,
    k: u8,
    opts: &CountOptions,
) -> Result<u64, CurveError> {
    assert!(k == 1 || k == 2, "only k in {{1,2}} is supported");
    let p = ctx.p;
    let (a2, a4, a6) = model.cubic(ctx);
    if k == 1 {
        if p > opts.brute_bound {
            return Err(CurveError::TooLarge {
                size: p,
                bound: opts.brute_bound,
            });
        }
        if !(a2.in_base() && a4.in_base() && a6.in_base()) {
            return Err(CurveError::InvalidModel);
        }
        // chi table over F_p
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..p {
            chi[ctx.mulp(x, x) as usize] = 1;
        }
        let mut n: i64 = p as i64 + 1;
        for x in 0..p {
            // f(x) = x^3 + a2 x^2 + a4 x + a6 by Horner
            let t1 = ctx.addp(x, a2.a);
            let t2 = ctx.addp(ctx.mulp(t1, x), a4.a);
            let v = ctx.addp(ctx.mulp(t2, x), a6.a);
            n += chi[v as usize] as i64;
        }
        return Ok(n as u64);
    }
    let size = p.checked_mul(p).expect("p < 2^31");
    if size > opts.brute_bound {
        return Err(CurveError::TooLarge {
            size,
            bound: opts.brute_bound,
        });
    }
    // square table over F_{p^2}, indexed by canonical encoding
    let mut chi = vec![-1i8; size as usize];
    chi[0] = 0;
    for code in 1..size {
        let u = ctx.decode(code);
        chi[ctx.encode(ctx.mul2(u, u)) as usize] = 1;
    }
    let mut n: i64 = size as i64 + 1;
    for code in 0..size {
        let x = ctx.decode(code);
        let t1 = ctx.add2(x, a2);
        let t2 = ctx.add2(ctx.mul2(t1, x), a4);
        let v = ctx.add2(ctx.mul2(t2, x), a6);
        n += chi[ctx.encode(v) as usize] as i64;
    }
    Ok(n as u64)
}

/// Supersingularity by the exact order criterion: the trace of Frobenius
/// over `F_{p^2}` is divisible by `p`. Used as the ground-truth oracle; the
/// classifier below is the fast path.
pub fn supersingular_by_count(
    ctx: &FieldCtx,
    j: Fp2,
    opts: &CountOptions,
) -> Result<bool, CurveError> {
    let model = curve_from_j(ctx, j);
    let n = count_points(ctx, &model, 2, opts)?;
    let p2 = ctx.p * ctx.p;
    let t = p2 as i64 + 1 - n as i64;
    Ok(t.rem_euclid(ctx.p as i64) == 0)
}

/// Deterministic supersingular base curve: `j = 1728` when `p = 3 (mod 4)`,
/// `j = 0` when `p = 2 (mod 3)`, else a seeded Legendre-parameter search
/// filtered by `H_p(lambda) = 0`.
pub fn find_base_supersingular(ctx: &FieldCtx, seed: u64) -> Result<Fp2, CurveError> {
    let p = ctx.p;
    assert!(p > 3);
    if p % 4 == 3 {
        return Ok(Fp2::from_base(1728 % p));
    }
    if p % 3 == 2 {
        return Ok(Fp2::ZERO);
    }
    let h = HassePoly::new(*ctx);
    let budget = 64 * p;
    let mut stream = rng::stream(seed, "base-curve-search");
    let qf = ctx.ext();
    for _ in 0..budget {
        let lambda = qf.sample(&mut stream);
        if lambda.is_zero() || lambda == Fp2::from_base(1) {
            continue;
        }
        if h.eval2(lambda).is_zero() {
            let model = CurveModel::Legendre { lambda };
            return j_invariant(ctx, &model);
        }
    }
    Err(CurveError::SearchExhausted { trials: budget })
}

/// The set of supersingular j-invariants for one prime, built once by
/// closing the base curve under 2-isogenies and verified against the exact
/// class-number count. Membership queries are then just set lookups.
#[derive(Clone, Debug)]
pub struct SsClassifier {
    pub ctx: FieldCtx,
    set: BTreeSet<u64>,
}

/// Exact number of supersingular j-invariants in characteristic p.
pub fn supersingular_count(p: u64) -> u64 {
    let base = p / 12;
    let adj = match p % 12 {
        1 => 0,
        5 => 1,
        7 => 1,
        11 => 2,
        _ => unreachable!("p > 3 prime"),
    };
    base + adj
}

impl SsClassifier {
    /// Close `find_base_supersingular(p)` under 2-isogeny neighbors. The
    /// supersingular 2-isogeny graph is connected, and the closure size is
    /// checked against the exact count, so the set is provably complete.
    pub fn new(ctx: &FieldCtx, seed: u64) -> Result<Self, CurveError> {
        let j0 = find_base_supersingular(ctx, seed)?;
        let mut set = BTreeSet::new();
        let mut frontier = vec![j0];
        set.insert(ctx.encode(j0));
        while let Some(j) = frontier.pop() {
            let nb = velu::velu_neighbors(ctx, j, 2, &velu::VeluOptions::default())?;
            for (jn, _) in nb.in_fp2(ctx) {
                if set.insert(ctx.encode(jn)) {
                    frontier.push(jn);
                }
            }
        }
        let expect = supersingular_count(ctx.p);
        assert_eq!(
            set.len() as u64,
            expect,
            "2-isogeny closure must exhaust the supersingular set (p={})",
            ctx.p
        );
        Ok(SsClassifier { ctx: *ctx, set })
    }

    pub fn is_supersingular(&self, j: Fp2) -> bool {
        self.set.contains(&self.ctx.encode(j))
    }

    /// All supersingular j-invariants in canonical order.
    pub fn all(&self) -> Vec<Fp2> {
        self.set.iter().map(|&c| self.ctx.decode(c)).collect()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// The degree-6 polynomial in `lambda` relating a Legendre parameter to a
/// fixed j-invariant: `256 (l^2 - l + 1)^3 - j l^2 (l - 1)^2`.
pub fn lambda_poly_for_j(ctx: &FieldCtx, j: Fp2) -> UniPoly<crate::algebra::field::QuadField> {
    let qf = ctx.ext();
    let one = Fp2::from_base(1);
    // (l^2 - l + 1)
    let base = UniPoly::new(&qf, vec![one, ctx.neg2(one), one]);
    let cubed = base.mul(&qf, &base).mul(&qf, &base);
    let lhs = cubed.scale(&qf, &Fp2::from_base(256 % ctx.p));
    // j * l^2 (l-1)^2 = j * (l^2 - 2l + 1) * l^2
    let sq = UniPoly::new(&qf, vec![one, ctx.neg2(Fp2::from_base(2)), one]);
    let l2 = UniPoly::new(&qf, vec![Fp2::ZERO, Fp2::ZERO, one]);
    let rhs = sq.mul(&qf, &l2).scale(&qf, &j);
    lhs.sub(&qf, &rhs)
}

/// Exact supersingularity test through the Hasse polynomial: find a
/// Legendre parameter for `j` over `F_{p^2}` (supersingular curves always
/// admit one) and test `H_p(lambda) = 0`. Scales to large `p`, where the
/// closure classifier would be wasteful for a handful of queries.
pub fn is_supersingular_via_hasse(ctx: &FieldCtx, h: &HassePoly, j: Fp2) -> bool {
    let qf = ctx.ext();
    let sextic = lambda_poly_for_j(ctx, j);
    let rs = crate::algebra::poly::roots(&qf, &sextic).expect("sextic is nonzero");
    match rs.first() {
        // no rational 2-torsion model over F_{p^2}: cannot be supersingular
        None => false,
        Some(&(lambda, _)) => h.eval2(lambda).is_zero(),
    }
}

/// Interchangeable supersingularity oracles: the closure set for small `p`
/// (bulk queries), the Hasse-evaluation route for large `p` (few queries).
#[derive(Clone, Debug)]
pub enum SsOracle {
    Set(SsClassifier),
    Hasse(FieldCtx, HassePoly),
}

impl SsOracle {
    pub fn classifier(ctx: &FieldCtx, seed: u64) -> Result<Self, CurveError> {
        Ok(SsOracle::Set(SsClassifier::new(ctx, seed)?))
    }

    pub fn hasse(ctx: &FieldCtx) -> Self {
        SsOracle::Hasse(*ctx, HassePoly::new(*ctx))
    }

    pub fn is_supersingular(&self, j: Fp2) -> bool {
        match self {
            SsOracle::Set(c) => c.is_supersingular(j),
            SsOracle::Hasse(ctx, h) => is_supersingular_via_hasse(ctx, h, j),
        }
    }
}

/// The univariate division polynomial data for one curve: `poly` vanishes
/// exactly on x-coordinates of nontrivial `ell`-torsion points.
#[derive(Clone, Debug)]
pub struct TorsionPoly<F: FieldOps> {
    pub ell: u64,
    pub poly: UniPoly<F>,
}

/// Division polynomials `e_1 ... e_max` over a generic field for
/// `y^2 = x^3 + a2 x^2 + a4 x + a6` (odd-index entries are the full
/// x-polynomials; even-index entries carry the cofactor of `y`).
///
/// Built from the `b`-invariant seeds and the doubling recurrences; exactness
/// is guaranteed by the division-free form (the only division is by 2).
pub fn division_poly_table<F: FieldOps>(
    field: &F,
    a2: &F::Elem,
    a4: &F::Elem,
    a6: &F::Elem,
    max_n: usize,
) -> Vec<UniPoly<F>> {
    let b2 = {
        // b2 = 4 a2
        field.mul(&field.from_u64(4), a2)
    };
    let b4 = field.mul(&field.from_u64(2), a4);
    let b6 = field.mul(&field.from_u64(4), a6);
    // b8 = 4 a2 a6 - a4^2
    let b8 = field.sub(
        &field.mul(&field.from_u64(4), &field.mul(a2, a6)),
        &field.mul(a4, a4),
    );
    let c = |e: &F::Elem| e.clone();
    let f_cubic = UniPoly::new(
        field,
        vec![c(a6), c(a4), c(a2), field.one()],
    );
    let mut e: Vec<UniPoly<F>> = Vec::with_capacity(max_n + 3);
    e.push(UniPoly::zero()); // e_0
    e.push(UniPoly::one(field)); // e_1
    e.push(UniPoly::constant(field, field.from_u64(2))); // e_2 (psi_2 = 2y)
    // e_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
    e.push(UniPoly::new(
        field,
        vec![
            b8.clone(),
            field.mul(&field.from_u64(3), &b6),
            field.mul(&field.from_u64(3), &b4),
            b2.clone(),
            field.from_u64(3),
        ],
    ));
    // e_4 = 2 (2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
    //          + (b2 b8 - b4 b6) x + (b4 b8 - b6^2))
    let e4_half = UniPoly::new(
        field,
        vec![
            field.sub(&field.mul(&b4, &b8), &field.mul(&b6, &b6)),
            field.sub(&field.mul(&b2, &b8), &field.mul(&b4, &b6)),
            field.mul(&field.from_u64(10), &b8),
            field.mul(&field.from_u64(10), &b6),
            field.mul(&field.from_u64(5), &b4),
            b2.clone(),
            field.from_u64(2),
        ],
    );
    e.push(e4_half.scale(field, &field.from_u64(2)));

    let two_inv = field
        .inv(&field.from_u64(2))
        .expect("odd characteristic");
    let fsq = f_cubic.mul(field, &f_cubic);
    for n in 5..=max_n.max(4) {
        if n > max_n {
            break;
        }
        let poly = if n % 2 == 1 {
            let m = n / 2; // n = 2m + 1
            let t1 = e[m + 2].mul(field, &e[m].mul(field, &e[m].mul(field, &e[m])));
            let t2 = e[m - 1].mul(
                field,
                &e[m + 1].mul(field, &e[m + 1].mul(field, &e[m + 1])),
            );
            if m % 2 == 0 {
                t1.mul(field, &fsq).sub(field, &t2)
            } else {
                t1.sub(field, &t2.mul(field, &fsq))
            }
        } else {
            let m = n / 2; // n = 2m
            let t1 = e[m + 2].mul(field, &e[m - 1].mul(field, &e[m - 1]));
            let t2 = e[m - 2].mul(field, &e[m + 1].mul(field, &e[m + 1]));
            e[m].mul(field, &t1.sub(field, &t2))
                .scale(field, &two_inv)
        };
        e.push(poly);
    }
    e.truncate(max_n + 1);
    e
}

/// Division polynomial of one odd prime level for a concrete curve model.
pub fn division_poly(
    ctx: &FieldCtx,
    ell: u64,
    model: &CurveModel,
) -> Result<TorsionPoly<crate::algebra::field::QuadField>, CurveError> {
    if ell == ctx.p {
        return Err(CurveError::EllEqualsP);
    }
    assert!(ell % 2 == 1 && ell > 2, "odd prime levels only");
    let qf = ctx.ext();
    let (a2, a4, a6) = model.cubic(ctx);
    let table = division_poly_table(&qf, &a2, &a4, &a6, ell as usize);
    Ok(TorsionPoly {
        ell,
        poly: table[ell as usize].clone(),
    })
}

/// Deterministic non-backtracking 2-isogeny walk state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkState {
    pub current: Fp2,
    /// Previous vertex, absent before the first step.
    pub previous: Option<Fp2>,
}

/// One walk step: among the 2-isogeny neighbor multiset (3 values, ordered
/// canonically), remove one copy of the previous vertex; the bit selects
/// between the two remaining choices (0 = smaller). Before the first step
/// the bit selects between the two smallest of the three neighbors.
pub fn cgl_step(
    ctx: &FieldCtx,
    state: WalkState,
    bit: bool,
    step_index: usize,
) -> Result<WalkState, CurveError> {
    let nb = velu::velu_neighbors(ctx, state.current, 2, &velu::VeluOptions::default())?;
    let mut flat: Vec<u64> = Vec::with_capacity(3);
    for (j, m) in nb.in_fp2(ctx) {
        for _ in 0..m {
            flat.push(ctx.encode(j));
        }
    }
    if flat.len() != 3 {
        return Err(CurveError::RepeatedRootAtStep(step_index));
    }
    flat.sort_unstable();
    if let Some(prev) = state.previous {
        let code = ctx.encode(prev);
        if let Some(pos) = flat.iter().position(|&c| c == code) {
            flat.remove(pos);
        } else {
            return Err(CurveError::RepeatedRootAtStep(step_index));
        }
    } else {
        // first step: drop the canonically largest so a bit still selects
        flat.pop();
    }
    let next = ctx.decode(flat[usize::from(bit)]);
    Ok(WalkState {
        current: next,
        previous: Some(state.current),
    })
}

/// Walk `bits` through the 2-isogeny graph from a supersingular start.
pub fn cgl_walk(
    ctx: &FieldCtx,
    classifier: &SsClassifier,
    j0: Fp2,
    bits: &[bool],
) -> Result<WalkState, CurveError> {
    if !classifier.is_supersingular(j0) {
        return Err(CurveError::NotSupersingularStart);
    }
    let mut state = WalkState {
        current: j0,
        previous: None,
    };
    for (i, &b) in bits.iter().enumerate() {
        state = cgl_step(ctx, state, b, i)?;
    }
    Ok(state)
}

/// Continue an existing walk with more bits.
pub fn cgl_walk_from(
    ctx: &FieldCtx,
    state: WalkState,
    bits: &[bool],
    offset: usize,
) -> Result<WalkState, CurveError> {
    let mut state = state;
    for (i, &b) in bits.iter().enumerate() {
        state = cgl_step(ctx, state, b, offset + i)?;
    }
    Ok(state)
}

/// Parse a bit string like "0110" into walk directions.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// Seeded random element of `F_{p^2}` (used by experiment drivers).
pub fn random_fp2(ctx: &FieldCtx, stream: &mut impl Rng) -> Fp2 {
    let p = ctx.p;
    Fp2::new(stream.gen_range(0..p), stream.gen_range(0..p))
}

#[cfg(test)]
mod tests;
