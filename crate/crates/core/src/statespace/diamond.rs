//! Hodge diamond assembly and the checks of its symmetries.

use std::collections::HashMap;

use num_traits::One;

use super::{Charges, Element, Precondition, StateSpace, StateSpaceError};
use crate::cyclotomic::CycNum;
use crate::linalg::{self, Matrix};
use crate::polynomial::{default_names, Monomial, Polynomial, WeightSystem};
use crate::rational::Q;
use crate::symmetry::{make_jf, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    /// `D = N - 2`.
    pub d: i64,
    /// `h[a][b]` for `0 ≤ a, b ≤ D`.
    pub h: Vec<Vec<usize>>,
    /// Invariant dimensions at integral bidegrees outside `[0, D]²`.
    pub outside: Vec<((i64, i64), usize)>,
    pub total: usize,
}

impl Diamond {
    pub fn get(&self, a: i64, b: i64) -> usize {
        if a < 0 || b < 0 || a > self.d || b > self.d {
            return self
                .outside
                .iter()
                .find(|(k, _)| *k == (a, b))
                .map_or(0, |x| x.1);
        }
        self.h[a as usize][b as usize]
    }

    /// Rows of constant `a + b`, top to bottom, each listed by increasing `a`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..=2 * self.d)
            .map(|s| {
                (0..=s)
                    .filter(|&a| a <= self.d && s - a <= self.d)
                    .map(|a| self.get(a, s - a))
                    .collect()
            })
            .collect()
    }
}

pub fn assemble_diamond(space: &StateSpace) -> Result<Diamond, StateSpaceError> {
    let d = space.nvars() as i64 - 2;
    let size = (d + 1).max(0) as usize;
    let mut h = vec![vec![0usize; size]; size];
    let mut outside = Vec::new();
    let names = default_names(space.nvars());
    let mut total = 0;
    for (b, block) in space.blocks.iter().enumerate() {
        let k = block.invariants.len();
        if k == 0 {
            continue;
        }
        if !block.is_integral() {
            return Err(StateSpaceError::NonIntegerCharge(format!(
                "{} at {}",
                space.format_vector(b, &block.invariants[0], &names),
                block.bidegree
            )));
        }
        let (a, bb) = (
            block.bidegree.q_l.to_integer(),
            block.bidegree.q_r.to_integer(),
        );
        total += k;
        if (0..=d).contains(&a) && (0..=d).contains(&bb) {
            h[a as usize][bb as usize] += k;
        } else {
            outside.push(((a, bb), k));
        }
    }
    Ok(Diamond { d, h, outside, total })
}

/// The hypotheses `Σq = 1`, `j_f ∈ G` and `G ⊆ SL`.
pub fn check_preconditions(w: &WeightSystem, group: &FiniteGroup) -> Result<(), StateSpaceError> {
    let s = w.sum();
    if !s.is_one() {
        return Err(StateSpaceError::PreconditionFailed(Precondition::NotCalabiYau(s)));
    }
    if !group.contains(&make_jf(w)) {
        return Err(StateSpaceError::PreconditionFailed(Precondition::MissingJ));
    }
    if let Some(g) = group.generators().iter().find(|g| !g.is_sl()) {
        return Err(StateSpaceError::PreconditionFailed(Precondition::NotInSL(
            g.to_string(),
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, pass: bool, witness: String) -> Check {
    Check {
        name: name.into(),
        pass,
        witness,
    }
}

fn bideg(a: i64, b: i64) -> Charges {
    Charges {
        q_l: Q::from_integer(a),
        q_r: Q::from_integer(b),
    }
}

/// Whether the invariants of bidegree `(a, b)` are exactly the line through
/// `[m]ξ_g`.
fn spanned_by(space: &StateSpace, a: i64, b: i64, g: usize, m: &Monomial) -> Result<(), String> {
    let names = default_names(space.nvars());
    let Some(bi) = space.block_index(bideg(a, b)) else {
        return Err(format!("no states of bidegree ({a}, {b})"));
    };
    let block = &space.blocks[bi];
    let Some(i) = space.sectors[g].ring.index_of(m) else {
        return Err(format!("{m:?} is not a basis monomial"));
    };
    let (bb, p) = space.position(Element { sector: g, basis: i });
    if bb != bi {
        return Err(format!(
            "{} has bidegree {}",
            space.format_element(Element { sector: g, basis: i }, &names),
            space.blocks[bb].bidegree
        ));
    }
    match &block.invariants[..] {
        [v] if v.iter().enumerate().all(|(j, c)| (j == p) != c.is_zero()) => Ok(()),
        inv => Err(format!(
            "h^{{{a},{b}}} = {}: {}",
            inv.len(),
            inv.iter()
                .map(|v| space.format_vector(bi, v, &names))
                .collect::<Vec<_>>()
                .join("; ")
        )),
    }
}

/// Images under `Ψ([p]ξ_g) = [p]ξ_{g⁻¹}` of the invariants of block `b`,
/// with the index of the target block.
pub fn psi(space: &StateSpace, b: usize) -> (usize, Vec<Vec<CycNum>>) {
    let block = &space.blocks[b];
    let target = space
        .block_index(Charges {
            q_l: block.bidegree.q_r,
            q_r: block.bidegree.q_l,
        })
        .expect("swapped bidegree is occupied");
    let n = space.blocks[target].dim();
    let images = block
        .invariants
        .iter()
        .map(|v| {
            let mut out = vec![CycNum::zero(1); n];
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = block.elements[j];
                let s = space.group.inv(e.sector);
                debug_assert_eq!(space.sectors[s].restriction, space.sectors[e.sector].restriction);
                let m = &space.sectors[e.sector].ring.basis[e.basis];
                let i = space.sectors[s].ring.index_of(m).expect("same ring");
                let (tb, p) = space.position(Element { sector: s, basis: i });
                debug_assert_eq!(tb, target);
                out[p] = c.clone();
            }
            out
        })
        .collect();
    (target, images)
}

/// Per-sector polynomial parts of a block vector.
fn components(space: &StateSpace, b: usize, v: &[CycNum]) -> HashMap<usize, Polynomial> {
    let mut out: HashMap<usize, Polynomial> = HashMap::new();
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = space.blocks[b].elements[j];
        let sec = &space.sectors[e.sector];
        let p = out
            .entry(e.sector)
            .or_insert_with(|| Polynomial::zero(sec.n_g()));
        p.add_term(sec.ring.basis[e.basis].clone(), c.clone());
    }
    out
}

/// Gram matrix of `Σ_g vol_g² · η_{f^g}` between the invariants of two blocks.
pub fn phi_gram(space: &StateSpace, b1: usize, b2: usize) -> Matrix<CycNum> {
    let left: Vec<_> = space.blocks[b1]
        .invariants
        .iter()
        .map(|v| components(space, b1, v))
        .collect();
    let right: Vec<_> = space.blocks[b2]
        .invariants
        .iter()
        .map(|v| components(space, b2, v))
        .collect();
    left.iter()
        .map(|u| {
            right
                .iter()
                .map(|v| {
                    let mut acc = CycNum::zero(1);
                    for (s, pu) in u {
                        if let Some(pv) = v.get(s) {
                            let sec = &space.sectors[*s];
                            let vol = &sec.fixed.volume;
                            let eta = sec.ring.residue_pairing(pu, pv);
                            acc = &acc + &(&(vol * vol) * &eta);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn verify_theorem(space: &StateSpace, diamond: &Diamond) -> Result<Verification, StateSpaceError> {
    check_preconditions(&space.weights, &space.group)?;
    let names = default_names(space.nvars());
    let d = diamond.d;
    let mut checks = Vec::new();

    // (1) integral charges
    let bad = space
        .blocks
        .iter()
        .enumerate()
        .find(|(_, b)| !b.invariants.is_empty() && !b.is_integral());
    checks.push(match bad {
        None => check(
            "integral_charges",
            true,
            format!("all {} invariants have integral charges", space.dim()),
        ),
        Some((b, block)) => check(
            "integral_charges",
            false,
            format!(
                "{} at {}",
                space.format_vector(b, &block.invariants[0], &names),
                block.bidegree
            ),
        ),
    });

    // (2) support
    checks.push(if diamond.outside.is_empty() {
        check("support_in_diamond", true, format!("h^{{a,b}} = 0 outside [0,{d}]^2"))
    } else {
        let ((a, b), k) = diamond.outside[0];
        check("support_in_diamond", false, format!("h^{{{a},{b}}} = {k}"))
    });

    // (3) h^{0,0} and h^{D,D}
    let id = space.group.index_of(&crate::symmetry::GroupElement::identity(space.nvars()))
        .expect("identity");
    let n = space.nvars();
    let top = space.sectors[id].ring.top.clone();
    let c00 = spanned_by(space, 0, 0, id, &Monomial::one(n));
    let cdd = spanned_by(space, d, d, id, &top);
    checks.push(match (c00, cdd) {
        (Ok(()), Ok(())) => check(
            "corners_00_DD",
            true,
            format!(
                "h^{{0,0}} = h^{{{d},{d}}} = 1, spanned by [1]ξ_{{id}} and [hess(f)]ξ_{{id}} = ({})*[{}]ξ_{{id}}",
                space.sectors[id].ring.hess_coeff,
                top.display_with(&names)
            ),
        ),
        (Err(e), _) | (_, Err(e)) => check("corners_00_DD", false, e),
    });

    // (4) h^{D,0} and h^{0,D}
    let j = space.jf_index().expect("j_f in G");
    let jinv = space.group.inv(j);
    let one0 = Monomial::one(space.sectors[j].n_g());
    let c0d = spanned_by(space, 0, d, j, &one0);
    let cd0 = spanned_by(space, d, 0, jinv, &one0);
    checks.push(match (c0d, cd0) {
        (Ok(()), Ok(())) => check(
            "corners_D0_0D",
            true,
            format!(
                "h^{{0,{d}}} = h^{{{d},0}} = 1, spanned by [1]ξ_{{{}}} and [1]ξ_{{{}}}",
                space.sectors[j].g, space.sectors[jinv].g
            ),
        ),
        (Err(e), _) | (_, Err(e)) => check("corners_D0_0D", false, e),
    });

    // (5) Ψ
    let mut psi_fail = None;
    for (b, block) in space.blocks.iter().enumerate() {
        if block.invariants.is_empty() {
            continue;
        }
        let (t, images) = psi(space, b);
        let target = &space.blocks[t];
        let mut stacked = target.invariants.clone();
        stacked.extend(images.iter().cloned());
        let ok = target.invariants.len() == block.invariants.len()
            && linalg::rank(&images) == images.len()
            && linalg::rank(&stacked) == target.invariants.len();
        if !ok {
            psi_fail = Some(format!(
                "{} (dim {}) -> {} (dim {})",
                block.bidegree,
                block.invariants.len(),
                target.bidegree,
                target.invariants.len()
            ));
            break;
        }
    }
    checks.push(match psi_fail {
        None => check(
            "psi_symmetry",
            true,
            "Ψ maps each (a,b) invariant block bijectively onto (b,a)".into(),
        ),
        Some(w) => check("psi_symmetry", false, w),
    });

    // (6) Φ
    let mut phi_fail = None;
    let mut certified = 0;
    for a in 0..=d {
        for b in 0..=d {
            let k = diamond.get(a, b);
            let k2 = diamond.get(d - b, d - a);
            if k != k2 {
                phi_fail = Some(format!("h^{{{a},{b}}} = {k} but h^{{{},{}}} = {k2}", d - b, d - a));
                break;
            }
            if k == 0 {
                continue;
            }
            let b1 = space.block_index(bideg(a, b)).expect("occupied");
            let b2 = space.block_index(bideg(d - b, d - a)).expect("occupied");
            let gram = phi_gram(space, b1, b2);
            let r = linalg::rank(&gram);
            if r != k {
                phi_fail = Some(format!("Gram matrix at ({a},{b}) has rank {r} < {k}"));
                break;
            }
            certified += 1;
        }
        if phi_fail.is_some() {
            break;
        }
    }
    checks.push(match phi_fail {
        None => check(
            "phi_duality",
            true,
            format!("{certified} nonzero cells paired with full-rank Gram matrices"),
        ),
        Some(w) => check("phi_duality", false, w),
    });

    Ok(Verification { checks })
}

impl std::fmt::Display for Diamond {
    /// One row per `a + b`, centered.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows = self.rows();
        let width = rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1)
            .max(1);
        let widest = rows.iter().map(Vec::len).max().unwrap_or(0);
        for row in &rows {
            let pad = (widest - row.len()) * (width + 1) / 2;
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}{}", " ".repeat(pad), cells.join(" "))?;
        }
        Ok(())
    }
}
