//! The Hasse (supersingular) polynomial `H_p`, iterative root-finding
//! schemes over `F_p` and `F_{p^2}`, and exact full-domain orbit statistics
//! of those iterations.
//!
//! `H_p(t) = sum_j binom((p-1)/2, j)^2 t^j` has degree `(p-1)/2`; its roots
//! are exactly the Legendre parameters of supersingular curves. The
//! iteration schemes move a point `t` by `-H_p(t)` (optionally divided by
//! `H_p'(t)`, or raised to the norm exponent `p+1`), so fixed points of the
//! iteration are roots of `H_p`.

use crate::algebra::field::{FieldCtx, Fp2, PrimeField};
use crate::algebra::poly::{roots, roots_fp2_of_fp_poly, UniPoly};
use crate::algebra::AlgebraError;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HasseError {
    Algebra(AlgebraError),
    /// `lambda in {0, 1}` is outside the Legendre family.
    DegenerateLambda,
    /// Seed lies outside the iteration kind's domain.
    DomainMismatch,
    /// Full-domain sweep would exceed the configured brute-force budget.
    TooLarge { domain: u64, bound: u64 },
}

impl fmt::Display for HasseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HasseError::Algebra(e) => write!(f, "{e}"),
            HasseError::DegenerateLambda => write!(f, "lambda must avoid 0 and 1"),
            HasseError::DomainMismatch => write!(f, "seed outside the iteration domain"),
            HasseError::TooLarge { domain, bound } => {
                write!(f, "domain size {domain} exceeds sweep bound {bound}")
            }
        }
    }
}

impl std::error::Error for HasseError {}

impl From<AlgebraError> for HasseError {
    fn from(e: AlgebraError) -> Self {
        HasseError::Algebra(e)
    }
}

/// `H_p` together with its derivative and the ambient field pair.
#[derive(Clone, Debug)]
pub struct HassePoly {
    pub ctx: FieldCtx,
    pub poly: UniPoly<PrimeField>,
    pub deriv: UniPoly<PrimeField>,
}

/// Coefficients of `H_p`: `binom((p-1)/2, j)^2 mod p`, by the multiplicative
/// recurrence on binomials.
pub fn hasse_coeffs(ctx: &FieldCtx) -> UniPoly<PrimeField> {
    let p = ctx.p;
    let k = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut binom = 1u64; // binom(k, 0)
    coeffs.push(1u64);
    for j in 1..=k {
        // binom(k, j) = binom(k, j-1) * (k - j + 1) / j
        let num = ctx.mulp(binom, (k - j + 1) % p);
        binom = ctx.mulp(num, ctx.invp(j % p).expect("j < p"));
        coeffs.push(ctx.mulp(binom, binom));
    }
    UniPoly::new(&ctx.base(), coeffs)
}

impl HassePoly {
    pub fn new(ctx: FieldCtx) -> Self {
        let poly = hasse_coeffs(&ctx);
        let deriv = poly.derivative(&ctx.base());
        HassePoly { ctx, poly, deriv }
    }

    /// Evaluate `H_p` at a point of `F_{p^2}` (the coefficients live in `F_p`).
    pub fn eval2(&self, t: Fp2) -> Fp2 {
        horner2(&self.ctx, &self.poly.coeffs, t)
    }

    pub fn deriv2(&self, t: Fp2) -> Fp2 {
        horner2(&self.ctx, &self.deriv.coeffs, t)
    }

    /// `H_p(lambda)` for a Legendre parameter, guarded against `{0, 1}`.
    pub fn hasse_eval(&self, lambda: Fp2) -> Result<Fp2, HasseError> {
        if lambda == Fp2::ZERO || lambda == Fp2::from_base(1) {
            return Err(HasseError::DegenerateLambda);
        }
        Ok(self.eval2(lambda))
    }

    /// Roots of `H_p` in `F_p`, ascending.
    pub fn roots_fp(&self) -> Vec<u64> {
        roots(&self.ctx.base(), &self.poly)
            .expect("H_p is nonzero")
            .into_iter()
            .map(|(r, _)| r)
            .collect()
    }

    /// Roots of `H_p` in `F_{p^2}`, in canonical encoding order.
    pub fn roots_fp2(&self) -> Vec<Fp2> {
        roots_fp2_of_fp_poly(&self.ctx, &self.poly)
            .expect("H_p is nonzero")
            .into_iter()
            .map(|(r, _)| r)
            .collect()
    }
}

fn horner2(ctx: &FieldCtx, coeffs: &[u64], t: Fp2) -> Fp2 {
    let mut acc = Fp2::ZERO;
    for &c in coeffs.iter().rev() {
        acc = ctx.mul2(acc, t);
        acc.a = ctx.addp(acc.a, c);
    }
    acc
}

/// The iteration maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterKind {
    /// `t - H(t)/H'(t)` over `F_{p^2}`.
    Newton,
    /// `t - H(t)` over `F_p`.
    PlainP,
    /// `t - H(t)` over `F_{p^2}`.
    PlainP2,
    /// `t - H(t)^{p+1}` over `F_{p^2}` (the norm decrement lies in `F_p`).
    Norm,
}

impl IterKind {
    pub fn over_base_field(self) -> bool {
        matches!(self, IterKind::PlainP)
    }

    pub fn parse(s: &str) -> Option<IterKind> {
        match s {
            "newton" => Some(IterKind::Newton),
            "plain_p" => Some(IterKind::PlainP),
            "plain_p2" => Some(IterKind::PlainP2),
            "norm" => Some(IterKind::Norm),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IterKind::Newton => "newton",
            IterKind::PlainP => "plain_p",
            IterKind::PlainP2 => "plain_p2",
            IterKind::Norm => "norm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    FixedPoint(Fp2),
    Cycle { length: usize },
    Aborted(AbortReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbortReason {
    /// Newton step hit `H'(t) = 0` with `H(t) != 0`.
    DerivativeZero,
    MaxSteps,
}

/// One seed's forward orbit.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub seed: Fp2,
    /// Iterates `t_0 ... t_T`, each element recorded once.
    pub path: Vec<Fp2>,
    pub terminal: Terminal,
    /// Steps to the terminal: distance to the fixed point, to the cycle
    /// entry, or to the aborting element.
    pub tail_length: usize,
}

/// One application of the iteration map; `None` signals a Newton
/// derivative-zero abort.
pub fn step(h: &HassePoly, kind: IterKind, t: Fp2) -> Option<Fp2> {
    let ctx = &h.ctx;
    match kind {
        IterKind::PlainP | IterKind::PlainP2 => Some(ctx.sub2(t, h.eval2(t))),
        IterKind::Norm => {
            let v = h.eval2(t);
            // v^{p+1} = v * v^p = norm(v) in F_p
            let n = ctx.norm2(v);
            Some(ctx.sub2(t, Fp2::from_base(n)))
        }
        IterKind::Newton => {
            let v = h.eval2(t);
            if v.is_zero() {
                return Some(t);
            }
            let d = h.deriv2(t);
            let dinv = ctx.inv2(d)?;
            Some(ctx.sub2(t, ctx.mul2(v, dinv)))
        }
    }
}

/// Iterate one seed until a fixed point, a cycle, an abort, or `max_steps`.
pub fn iterate(
    h: &HassePoly,
    kind: IterKind,
    t0: Fp2,
    max_steps: usize,
) -> Result<OrbitRecord, HasseError> {
    if kind.over_base_field() && !t0.in_base() {
        return Err(HasseError::DomainMismatch);
    }
    let ctx = &h.ctx;
    let mut path = vec![t0];
    let mut seen = std::collections::HashMap::new();
    seen.insert(ctx.encode(t0), 0usize);
    let mut cur = t0;
    for n in 0..max_steps {
        let Some(next) = step(h, kind, cur) else {
            return Ok(OrbitRecord {
                seed: t0,
                path,
                terminal: Terminal::Aborted(AbortReason::DerivativeZero),
                tail_length: n,
            });
        };
        if next == cur {
            return Ok(OrbitRecord {
                seed: t0,
                path,
                terminal: Terminal::FixedPoint(cur),
                tail_length: n,
            });
        }
        if let Some(&pos) = seen.get(&ctx.encode(next)) {
            let length = path.len() - pos;
            return Ok(OrbitRecord {
                seed: t0,
                path,
                terminal: Terminal::Cycle { length },
                tail_length: pos,
            });
        }
        path.push(next);
        seen.insert(ctx.encode(next), path.len() - 1);
        cur = next;
    }
    Ok(OrbitRecord {
        seed: t0,
        path,
        terminal: Terminal::Aborted(AbortReason::MaxSteps),
        tail_length: max_steps,
    })
}

/// Options for the full-domain sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Hard gate on the domain size.
    pub brute_bound: u64,
    /// Count elements of aborted Newton orbits as reaching. Off by default:
    /// the p = 101 and p = 211 reference counts hold under this convention.
    pub count_aborted_as_reaching: bool,
    /// `reach_histogram[k]` is reported for `0 <= k <= histogram_len`.
    pub histogram_len: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            brute_bound: 1 << 24,
            count_aborted_as_reaching: false,
            histogram_len: 10,
        }
    }
}

/// Exact statistics of one iteration map over its whole domain.
#[derive(Clone, Debug)]
pub struct IterationStats {
    pub p: u64,
    pub kind: IterKind,
    pub domain_size: u64,
    pub num_fixed_points: u64,
    pub num_reaching: u64,
    pub max_tail: u64,
    /// `reach_histogram[k]`: number of elements within `k` iterations of a
    /// fixed point (index 0 counts the fixed points themselves).
    pub reach_histogram: Vec<u64>,
    /// Fixed points paired with the number of *other* elements eventually
    /// reaching them, in canonical order.
    pub basin_sizes: Vec<(Fp2, u64)>,
    pub num_cycles: u64,
    pub num_aborted: u64,
    /// `num_fixed_points / sqrt(p)`.
    pub f1: f64,
    /// Fraction of the domain eventually reaching a fixed point.
    pub f2: f64,
    /// `max_tail / sqrt(p)`.
    pub f3: f64,
}

const UNRESOLVED: u32 = u32::MAX;
const NON_REACHING: u32 = u32::MAX - 1;
const ON_PATH: u32 = u32::MAX - 2;

/// Memoized functional-graph traversal of the full domain: every element's
/// successor is evaluated exactly once, and every element is classified as
/// reaching (with exact distance and terminal fixed point) or not.
pub fn orbit_statistics(
    h: &HassePoly,
    kind: IterKind,
    opts: &SweepOptions,
) -> Result<IterationStats, HasseError> {
    let ctx = &h.ctx;
    let p = ctx.p;
    let domain: u64 = if kind.over_base_field() { p } else { p * p };
    if domain > opts.brute_bound {
        return Err(HasseError::TooLarge {
            domain,
            bound: opts.brute_bound,
        });
    }
    let n = domain as usize;
    let decode = |i: u64| -> Fp2 {
        if kind.over_base_field() {
            Fp2::from_base(i)
        } else {
            ctx.decode(i)
        }
    };
    let encode = |t: Fp2| -> u64 {
        if kind.over_base_field() {
            t.a
        } else {
            ctx.encode(t)
        }
    };

    // dense successor table; u64::MAX marks a Newton abort sink
    let mut succ = vec![u64::MAX; n];
    for (i, s) in succ.iter_mut().enumerate() {
        if let Some(next) = step(h, kind, decode(i as u64)) {
            *s = encode(next);
        }
    }

    let mut dist = vec![UNRESOLVED; n];
    let mut terminal = vec![u64::MAX; n];
    let mut aborted = vec![false; n];
    let mut num_cycles = 0u64;

    enum Base {
        Reach(u32, u64),
        NonReach { abort: bool },
    }

    let mut path: Vec<usize> = Vec::new();
    for start in 0..n {
        if dist[start] != UNRESOLVED {
            continue;
        }
        path.clear();
        let mut cur = start;
        let base: Base = loop {
            dist[cur] = ON_PATH;
            path.push(cur);
            let nx = succ[cur];
            if nx == u64::MAX {
                break Base::NonReach { abort: true };
            }
            let nxt = nx as usize;
            if nxt == cur {
                // fixed point: finalize cur itself here
                dist[cur] = 0;
                terminal[cur] = cur as u64;
                path.pop();
                break Base::Reach(0, cur as u64);
            }
            match dist[nxt] {
                UNRESOLVED => {
                    cur = nxt;
                }
                ON_PATH => {
                    // new cycle: everything from nxt's path position onwards
                    let pos = path
                        .iter()
                        .position(|&e| e == nxt)
                        .expect("on-path element is on the path");
                    for &e in &path[pos..] {
                        dist[e] = NON_REACHING;
                    }
                    num_cycles += 1;
                    path.truncate(pos);
                    break Base::NonReach { abort: false };
                }
                NON_REACHING => {
                    break Base::NonReach { abort: aborted[nxt] };
                }
                d => {
                    break Base::Reach(d, terminal[nxt]);
                }
            }
        };
        match base {
            Base::Reach(d0, term) => {
                let mut d = d0;
                for &e in path.iter().rev() {
                    d += 1;
                    dist[e] = d;
                    terminal[e] = term;
                }
            }
            Base::NonReach { abort } => {
                for &e in &path {
                    dist[e] = NON_REACHING;
                    if abort {
                        aborted[e] = true;
                    }
                }
            }
        }
    }

    // summarize
    let mut num_fixed = 0u64;
    let mut num_reaching = 0u64;
    let mut max_tail = 0u64;
    let mut by_dist: Vec<u64> = vec![];
    let mut basins: std::collections::BTreeMap<u64, u64> = Default::default();
    let mut num_aborted = 0u64;
    for (i, &d) in dist.iter().enumerate() {
        if d == NON_REACHING {
            if aborted[i] {
                num_aborted += 1;
                if opts.count_aborted_as_reaching {
                    num_reaching += 1;
                }
            }
            continue;
        }
        debug_assert!(d < ON_PATH);
        num_reaching += 1;
        let d = d as u64;
        if d == 0 {
            num_fixed += 1;
            basins.entry(i as u64).or_insert(0);
        } else {
            *basins.entry(terminal[i]).or_insert(0) += 1;
        }
        max_tail = max_tail.max(d);
        if by_dist.len() <= d as usize {
            by_dist.resize(d as usize + 1, 0);
        }
        by_dist[d as usize] += 1;
    }
    let mut hist = Vec::with_capacity(opts.histogram_len + 1);
    let mut acc = 0u64;
    for k in 0..=opts.histogram_len {
        acc += by_dist.get(k).copied().unwrap_or(0);
        hist.push(acc);
    }
    let basin_sizes: Vec<(Fp2, u64)> = basins.iter().map(|(&i, &c)| (decode(i), c)).collect();
    let sqrt_p = (p as f64).sqrt();
    Ok(IterationStats {
        p,
        kind,
        domain_size: domain,
        num_fixed_points: num_fixed,
        num_reaching,
        max_tail,
        reach_histogram: hist,
        basin_sizes,
        num_cycles,
        num_aborted,
        f1: num_fixed as f64 / sqrt_p,
        f2: num_reaching as f64 / domain as f64,
        f3: max_tail as f64 / sqrt_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;

    fn ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn h5_coefficients() {
        // direct expansion: binom(2,0)^2, binom(2,1)^2, binom(2,2)^2 = 1,4,1
        let h = hasse_coeffs(&ctx(5));
        assert_eq!(h.coeffs, vec![1, 4, 1]);
    }

    #[test]
    fn degree_and_constant_term() {
        for p in [5u64, 7, 11, 101, 211] {
            let h = hasse_coeffs(&ctx(p));
            assert_eq!(h.degree(), Some(((p - 1) / 2) as usize));
            assert_eq!(h.coeffs[0], 1);
        }
    }

    #[test]
    fn coefficients_match_integer_binomials() {
        // oracle: Pascal's triangle over the integers, reduced afterwards
        for p in [7u64, 13, 31] {
            let k = (p - 1) / 2;
            let mut pascal = vec![1u128];
            for _ in 0..k {
                let mut next = vec![1u128];
                for w in pascal.windows(2) {
                    next.push(w[0] + w[1]);
                }
                next.push(1);
                pascal = next;
            }
            let expect: Vec<u64> = pascal
                .iter()
                .map(|&b| {
                    let r = (b % p as u128) as u64;
                    crate::nt::mul_mod(r, r, p)
                })
                .collect();
            assert_eq!(hasse_coeffs(&ctx(p)).coeffs, expect);
        }
    }

    #[test]
    fn hasse_eval_guards_degenerate_lambda() {
        let h = HassePoly::new(ctx(5));
        assert_eq!(
            h.hasse_eval(Fp2::ZERO).unwrap_err(),
            HasseError::DegenerateLambda
        );
        assert_eq!(
            h.hasse_eval(Fp2::from_base(1)).unwrap_err(),
            HasseError::DegenerateLambda
        );
        // H_5(2) = 1 + 8 + 4 = 13 = 3 mod 5
        assert_eq!(h.hasse_eval(Fp2::from_base(2)).unwrap(), Fp2::from_base(3));
    }

    #[test]
    fn h101_has_50_roots_in_fp2() {
        let h = HassePoly::new(ctx(101));
        assert_eq!(h.roots_fp2().len(), 50);
        // p = 1 (mod 4): none of them in F_p
        assert!(h.roots_fp().is_empty());
    }

    #[test]
    fn no_fp_roots_when_p_is_1_mod_4() {
        for p in crate::nt::primes_in(5, 500) {
            if p % 4 != 1 {
                continue;
            }
            let h = HassePoly::new(ctx(p));
            assert!(h.roots_fp().is_empty(), "p={p}");
        }
    }

    #[test]
    fn root_seed_is_fixed_point_with_zero_tail() {
        let h = HassePoly::new(ctx(101));
        let r = h.roots_fp2()[0];
        for kind in [IterKind::Newton, IterKind::PlainP2, IterKind::Norm] {
            let o = iterate(&h, kind, r, 100).unwrap();
            assert_eq!(o.terminal, Terminal::FixedPoint(r));
            assert_eq!(o.tail_length, 0);
        }
    }

    #[test]
    fn domain_mismatch_rejected() {
        let h = HassePoly::new(ctx(7));
        let t = Fp2::new(1, 1);
        assert_eq!(
            iterate(&h, IterKind::PlainP, t, 10).unwrap_err(),
            HasseError::DomainMismatch
        );
    }

    #[test]
    fn determinism_of_iterate() {
        let h = HassePoly::new(ctx(211));
        let t = Fp2::new(17, 103);
        let a = iterate(&h, IterKind::Newton, t, 10_000).unwrap();
        let b = iterate(&h, IterKind::Newton, t, 10_000).unwrap();
        assert_eq!(a.path, b.path);
        assert_eq!(a.terminal, b.terminal);
    }

    #[test]
    fn fixed_points_of_plain_are_roots() {
        for p in [13u64, 29, 101] {
            let h = HassePoly::new(ctx(p));
            let fp_roots: std::collections::BTreeSet<u64> = h.roots_fp().into_iter().collect();
            let fixed: std::collections::BTreeSet<u64> = (0..p)
                .filter(|&a| {
                    let t = Fp2::from_base(a);
                    step(&h, IterKind::PlainP, t) == Some(t)
                })
                .collect();
            assert_eq!(fixed, fp_roots, "p={p}");
        }
    }

    #[test]
    fn norm_fixed_points_are_fp2_roots() {
        let p = 29u64;
        let h = HassePoly::new(ctx(p));
        let roots2: std::collections::BTreeSet<u64> = h
            .roots_fp2()
            .into_iter()
            .map(|r| h.ctx.encode(r))
            .collect();
        let fixed: std::collections::BTreeSet<u64> = (0..p * p)
            .filter(|&c| {
                let t = h.ctx.decode(c);
                step(&h, IterKind::Norm, t) == Some(t)
            })
            .collect();
        assert_eq!(fixed, roots2);
    }

    #[test]
    fn sweep_totals_cover_domain() {
        let p = 53;
        let h = HassePoly::new(ctx(p));
        for kind in [
            IterKind::Newton,
            IterKind::PlainP,
            IterKind::PlainP2,
            IterKind::Norm,
        ] {
            let s = orbit_statistics(&h, kind, &SweepOptions::default()).unwrap();
            let domain = if kind.over_base_field() { p } else { p * p };
            assert_eq!(s.domain_size, domain);
            let basin_total: u64 = s.basin_sizes.iter().map(|(_, c)| c).sum();
            assert_eq!(basin_total + s.num_fixed_points, s.num_reaching);
            assert!(s.num_reaching <= domain);
            for w in s.reach_histogram.windows(2) {
                assert!(w[0] <= w[1]);
            }
            assert_eq!(s.reach_histogram[0], s.num_fixed_points);
            // fixed points of the plain/norm maps are exactly the roots
            if kind != IterKind::Newton {
                let expect = if kind.over_base_field() {
                    h.roots_fp().len() as u64
                } else {
                    h.roots_fp2().len() as u64
                };
                assert_eq!(s.num_fixed_points, expect, "kind={:?}", kind);
            }
        }
    }

    #[test]
    fn sweep_matches_single_orbits() {
        let p = 31;
        let h = HassePoly::new(ctx(p));
        let s = orbit_statistics(&h, IterKind::PlainP2, &SweepOptions::default()).unwrap();
        // every seed's per-orbit tail agrees with the sweep's global data
        let mut max_tail_seen = 0;
        let mut reaching = 0u64;
        for code in 0..p * p {
            let t = h.ctx.decode(code);
            let o = iterate(&h, IterKind::PlainP2, t, 1_000_000).unwrap();
            if matches!(o.terminal, Terminal::FixedPoint(_)) {
                reaching += 1;
                max_tail_seen = max_tail_seen.max(o.tail_length as u64);
            }
        }
        assert_eq!(reaching, s.num_reaching);
        assert_eq!(max_tail_seen, s.max_tail);
    }

    #[test]
    fn too_large_domain_rejected() {
        let h = HassePoly::new(ctx(101));
        let opts = SweepOptions {
            brute_bound: 100,
            ..Default::default()
        };
        assert!(matches!(
            orbit_statistics(&h, IterKind::Newton, &opts),
            Err(HasseError::TooLarge { .. })
        ));
    }
}
