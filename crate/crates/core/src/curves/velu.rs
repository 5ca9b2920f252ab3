//! Vélu isogenies: the multiset of `ell`-isogeny neighbor j-invariants of a
//! curve, computed by enumerating order-`ell` subgroups over the smallest
//! extension containing the torsion and applying Vélu's formulas.
//!
//! The neighbor multiset is Galois-stable, so its characteristic polynomial
//! `prod (Y - j')` descends to `F_{p^2}[Y]`; that polynomial is what the
//! modular-polynomial interpolation consumes.

use super::{curve_from_j, CurveError};
use crate::algebra::field::{ExtField, FieldCtx, FieldOps, Fp2, QuadField};
use crate::algebra::poly::{
    factor_squarefree, pow_mod_poly, roots_assuming_split, sqrt_in_field, UniPoly,
};
use crate::rng;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Options for torsion-field construction.
#[derive(Clone, Copy, Debug)]
pub struct VeluOptions {
    /// Bound on the torsion field degree over `F_p` (the working extension
    /// has degree at most `degree_bound / 2` over `F_{p^2}`).
    pub degree_bound: usize,
}

impl Default for VeluOptions {
    fn default() -> Self {
        VeluOptions { degree_bound: 60 }
    }
}

type Ext = ExtField<QuadField>;
type ExtElem = Vec<Fp2>;

/// The `ell + 1` neighbor j-invariants of one vertex, kept in the working
/// extension, together with their descended characteristic polynomial.
#[derive(Clone, Debug)]
pub struct NeighborSet {
    /// Degree of the working extension over `F_{p^2}`.
    pub ext_degree: usize,
    values: Vec<ExtElem>,
    /// `prod (Y - j')`, coefficients descended to `F_{p^2}`.
    pub poly: UniPoly<QuadField>,
}

impl NeighborSet {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Neighbors lying in `F_{p^2}`, with multiplicities, canonically
    /// ordered. For supersingular vertices this is the whole multiset.
    pub fn in_fp2(&self, ctx: &FieldCtx) -> Vec<(Fp2, usize)> {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for v in &self.values {
            if v.iter().skip(1).all(|c| c.is_zero()) {
                *counts.entry(ctx.encode(v[0])).or_insert(0) += 1;
            }
        }
        counts
            .into_iter()
            .map(|(code, m)| (ctx.decode(code), m))
            .collect()
    }
}

/// Deterministic monic irreducible of degree `k` over `F_{p^2}`: seeded
/// scan with Rabin's irreducibility test.
pub fn find_irreducible(ctx: &FieldCtx, k: usize) -> UniPoly<QuadField> {
    let qf = ctx.ext();
    if k == 1 {
        return UniPoly::x(&qf);
    }
    let mut stream = rng::stream(ctx.p ^ ((k as u64) << 40), "ext-modulus");
    let q: BigUint = qf.order();
    loop {
        let mut coeffs: Vec<Fp2> = (0..k).map(|_| qf.sample(&mut stream)).collect();
        coeffs.push(Fp2::from_base(1));
        let g = UniPoly::new(&qf, coeffs);
        if is_irreducible(&qf, &g, &q, k) {
            return g;
        }
    }
}

fn is_irreducible(qf: &QuadField, g: &UniPoly<QuadField>, q: &BigUint, k: usize) -> bool {
    // x^{q^k} = x (mod g), and gcd(x^{q^{k/r}} - x, g) = 1 for prime r | k
    let x = UniPoly::x(qf);
    let qk = q.pow(k as u32);
    let frob_k = pow_mod_poly(qf, &x, &qk, g);
    if frob_k != x.divrem(qf, g).1 {
        return false;
    }
    for (r, _) in crate::nt::factor(k as u64) {
        let e = k / r as usize;
        let qe = q.pow(e as u32);
        let frob_e = pow_mod_poly(qf, &x, &qe, g);
        let diff = frob_e.sub(qf, &x);
        if diff.is_zero() {
            return false;
        }
        let gcd = crate::algebra::poly::poly_gcd(qf, &diff, g).expect("nonzero");
        if gcd.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Affine-or-infinity point for short Weierstrass arithmetic over a generic
/// field.
#[derive(Clone, Debug, PartialEq)]
enum Pt {
    Inf,
    Aff(ExtElem, ExtElem),
}

fn pt_add(f: &Ext, a_coef: &ExtElem, p1: &Pt, p2: &Pt) -> Pt {
    match (p1, p2) {
        (Pt::Inf, q) => q.clone(),
        (q, Pt::Inf) => q.clone(),
        (Pt::Aff(x1, y1), Pt::Aff(x2, y2)) => {
            if x1 == x2 {
                if f.is_zero(&f.add(y1, y2)) {
                    return Pt::Inf;
                }
                // doubling: lambda = (3x^2 + a) / 2y
                let x1sq = f.mul(x1, x1);
                let num = f.add(&f.add(&x1sq, &x1sq), &f.add(&x1sq, a_coef));
                let den = f.add(y1, y1);
                let l = f.mul(&num, &f.inv(&den).expect("2y != 0 when y != -y"));
                let x3 = f.sub(&f.sub(&f.mul(&l, &l), x1), x2);
                let y3 = f.sub(&f.mul(&l, &f.sub(x1, &x3)), y1);
                Pt::Aff(x3, y3)
            } else {
                let num = f.sub(y2, y1);
                let den = f.sub(x2, x1);
                let l = f.mul(&num, &f.inv(&den).expect("x1 != x2"));
                let x3 = f.sub(&f.sub(&f.mul(&l, &l), x1), x2);
                let y3 = f.sub(&f.mul(&l, &f.sub(x1, &x3)), y1);
                Pt::Aff(x3, y3)
            }
        }
    }
}

/// The `psi(ell) = ell + 1` neighbor j-invariants of `j` in the
/// `ell`-isogeny graph, one per order-`ell` subgroup.
pub fn velu_neighbors(
    ctx: &FieldCtx,
    j: Fp2,
    ell: u64,
    opts: &VeluOptions,
) -> Result<NeighborSet, CurveError> {
    if ell == ctx.p {
        return Err(CurveError::EllEqualsP);
    }
    let qf = ctx.ext();
    let model = curve_from_j(ctx, j);
    let (_, a4, a6) = model.cubic(ctx);

    // kernel x-polynomial: the 2-division cubic, or the ell-division poly
    let kernel_poly: UniPoly<QuadField> = if ell == 2 {
        UniPoly::new(&qf, vec![a6, a4, Fp2::ZERO, Fp2::from_base(1)])
    } else {
        let table =
            super::division_poly_table(&qf, &Fp2::ZERO, &a4, &a6, ell as usize);
        table[ell as usize].clone()
    };

    let factors = factor_squarefree(&qf, &kernel_poly.make_monic(&qf));
    let mut k0 = 1usize;
    for (h, _) in &factors {
        k0 = k0.lcm(&h.degree().expect("nonconstant factor"));
    }

    // does the torsion need a further quadratic twist for the y's?
    let needs_y = ell != 2;
    let mut k = k0;
    if needs_y {
        let cubic_fp2 = |x: Fp2| -> Fp2 {
            let x2 = ctx.mul2(x, x);
            ctx.add2(ctx.add2(ctx.mul2(x2, x), ctx.mul2(a4, x)), a6)
        };
        let mut all_square = true;
        for (h, _) in &factors {
            let d = h.degree().unwrap();
            if (k0 / d) % 2 == 0 {
                continue; // squares appear automatically in even towers
            }
            let square = if d == 1 {
                // root in F_{p^2} itself
                let root = qf.neg(&qf.mul(&h.coeffs[0], &qf.inv(&h.coeffs[1]).unwrap()));
                let fx = cubic_fp2(root);
                let half = (qf.order() - BigUint::one()) / BigUint::from(2u32);
                fx.is_zero() || qf.pow_big(&fx, &half) == qf.one()
            } else {
                // Euler test of f(xbar) in the field F_{p^2}[x]/(h)
                let quotient = ExtField::new(qf, h.make_monic(&qf).coeffs);
                let xbar = quotient.gen();
                let x2 = quotient.mul(&xbar, &xbar);
                let x3 = quotient.mul(&x2, &xbar);
                let fx = quotient.add(
                    &quotient.add(&x3, &quotient.mul(&quotient.embed(a4), &xbar)),
                    &quotient.embed(a6),
                );
                let half = (quotient.order() - BigUint::one()) / BigUint::from(2u32);
                quotient.is_zero(&fx) || quotient.pow_big(&fx, &half) == quotient.one()
            };
            if !square {
                all_square = false;
                break;
            }
        }
        if !all_square {
            k = 2 * k0;
        }
    }
    if 2 * k > opts.degree_bound {
        return Err(CurveError::ExtensionTooLarge {
            needed: 2 * k,
            bound: opts.degree_bound,
        });
    }

    // build the working extension and collect all kernel x-coordinates
    let modulus = find_irreducible(ctx, k);
    let ext = ExtField::new(qf, modulus.coeffs.clone());
    let embed = |c: Fp2| ext.embed(c);
    let a4e = embed(a4);
    let a6e = embed(a6);
    let mut xroots: Vec<ExtElem> = Vec::new();
    for (h, _) in &factors {
        let lifted = h.map_coeffs(&ext, |c| ext.embed(*c));
        let rs = roots_assuming_split(&ext, &lifted);
        debug_assert_eq!(rs.len(), h.degree().unwrap());
        xroots.extend(rs);
    }
    xroots.sort_by(|a, b| ext.key(a).cmp(&ext.key(b)));

    let cubic_at = |x: &ExtElem| -> ExtElem {
        let x2 = ext.mul(x, x);
        let x3 = ext.mul(&x2, x);
        ext.add(&ext.add(&x3, &ext.mul(&a4e, x)), &a6e)
    };

    let mut values: Vec<ExtElem> = Vec::new();
    if ell == 2 {
        // each cubic root is one order-2 kernel
        for x0 in &xroots {
            let x0sq = ext.mul(x0, x0);
            let gx = ext.add(&ext.add(&x0sq, &ext.add(&x0sq, &x0sq)), &a4e);
            let v = gx.clone();
            let w = ext.mul(x0, &gx);
            values.push(isogenous_j(&ext, &a4e, &a6e, &v, &w)?);
        }
    } else {
        // basis (P1, P2) of E[ell] from two independent kernel points
        let lift = |x: &ExtElem| -> Pt {
            let y2 = cubic_at(x);
            let y = sqrt_in_field(&ext, &y2).expect("torsion y rational by choice of k");
            Pt::Aff(x.clone(), y)
        };
        let p1 = lift(&xroots[0]);
        let half = (ell as usize - 1) / 2;
        let x_multiples = |g: &Pt| -> Vec<ExtElem> {
            let mut out = Vec::with_capacity(half);
            let mut acc = g.clone();
            for _ in 0..half {
                if let Pt::Aff(x, _) = &acc {
                    out.push(x.clone());
                } else {
                    panic!("kernel generator has order ell");
                }
                acc = pt_add(&ext, &a4e, &acc, g);
            }
            out
        };
        let p1_x = x_multiples(&p1);
        let p2 = xroots
            .iter()
            .find(|x| !p1_x.contains(x))
            .map(&lift)
            .expect("E[ell] has rank 2");
        // subgroups: <P1>, and <P2 + i P1> for i = 0..ell-1
        let mut generators = vec![p1.clone()];
        let mut shifted = p2.clone();
        for i in 0..ell {
            if i > 0 {
                shifted = pt_add(&ext, &a4e, &shifted, &p1);
            }
            generators.push(shifted.clone());
        }
        for g in &generators {
            let mut v = ext.zero();
            let mut w = ext.zero();
            let mut acc = g.clone();
            for _ in 0..half {
                let Pt::Aff(x, y) = &acc else {
                    panic!("kernel generator has order ell")
                };
                let xsq = ext.mul(x, x);
                let gx = ext.add(&ext.add(&xsq, &ext.add(&xsq, &xsq)), &a4e);
                let vq = ext.add(&gx, &gx);
                let ysq = ext.mul(y, y);
                let uq = ext.add(&ext.add(&ysq, &ysq), &ext.add(&ysq, &ysq));
                v = ext.add(&v, &vq);
                w = ext.add(&w, &ext.add(&uq, &ext.mul(x, &vq)));
                acc = pt_add(&ext, &a4e, &acc, g);
            }
            values.push(isogenous_j(&ext, &a4e, &a6e, &v, &w)?);
        }
    }

    // characteristic polynomial, then descent to F_{p^2}
    let mut poly_ext = UniPoly::one(&ext);
    for val in &values {
        let lin = UniPoly::new(&ext, vec![ext.neg(val), ext.one()]);
        poly_ext = poly_ext.mul(&ext, &lin);
    }
    let mut coeffs = Vec::with_capacity(poly_ext.coeffs.len());
    for c in &poly_ext.coeffs {
        match ext.to_base(c) {
            Some(base) => coeffs.push(base),
            None => panic!(
                "neighbor polynomial must descend to F_(p^2): p={} j=({},{}) ell={}",
                ctx.p, j.a, j.b, ell
            ),
        }
    }
    let poly = UniPoly::new(&ctx.ext(), coeffs);
    Ok(NeighborSet {
        ext_degree: k,
        values,
        poly,
    })
}

/// Codomain j-invariant from Vélu sums: `E' : y^2 = x^3 + (a-5v)x + (b-7w)`.
fn isogenous_j(
    ext: &Ext,
    a: &ExtElem,
    b: &ExtElem,
    v: &ExtElem,
    w: &ExtElem,
) -> Result<ExtElem, CurveError> {
    let five_v = ext.mul(&ext.from_u64(5), v);
    let seven_w = ext.mul(&ext.from_u64(7), w);
    let a2 = ext.sub(a, &five_v);
    let b2 = ext.sub(b, &seven_w);
    let a3 = ext.mul(&ext.mul(&a2, &a2), &a2);
    let four_a3 = ext.mul(&ext.from_u64(4), &a3);
    let bsq = ext.mul(&b2, &b2);
    let disc = ext.add(&four_a3, &ext.mul(&ext.from_u64(27), &bsq));
    let dinv = ext.inv(&disc).ok_or(CurveError::InvalidModel)?;
    Ok(ext.mul(&ext.mul(&ext.from_u64(1728), &four_a3), &dinv))
}
