//! Buchberger's algorithm under graded reverse lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;
use crate::polynomial::{Monomial, Polynomial};

/// Grevlex: total degree first, then the smaller exponent in the last
/// differing variable wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grevlex(pub Monomial);

pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exps().iter().zip(b.exps()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Grevlex {
    fn cmp(&self, o: &Self) -> Ordering {
        grevlex_cmp(&self.0, &o.0)
    }
}

impl PartialOrd for Grevlex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms sorted by descending grevlex order; no zero coefficients.
type Terms = Vec<(Monomial, CycNum)>;

#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    polys: Vec<Terms>,
}

fn to_terms(p: &Polynomial) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
    t
}

fn from_map(map: BTreeMap<Grevlex, CycNum>) -> Terms {
    map.into_iter().rev().map(|(m, c)| (m.0, c)).collect()
}

fn make_monic(t: &mut Terms) {
    let Some((_, lc)) = t.first() else { return };
    if lc.is_one() {
        return;
    }
    let inv = lc.inv().expect("leading coefficient is nonzero");
    for (_, c) in t.iter_mut() {
        *c = &*c * &inv;
    }
}

/// Full reduction of `p` by the monic polynomials `basis`.
fn reduce(p: BTreeMap<Grevlex, CycNum>, basis: &[Terms]) -> BTreeMap<Grevlex, CycNum> {
    let mut work = p;
    let mut rem = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        let Some(g) = basis.iter().find(|g| g[0].0.divides(&m.0)) else {
            rem.insert(m, c);
            continue;
        };
        let shift = g[0].0.quotient(&m.0);
        for (gm, gc) in &g[1..] {
            let key = Grevlex(gm.mul(&shift));
            let delta = &c * gc;
            match work.get_mut(&key) {
                Some(x) => {
                    *x = &*x - &delta;
                    if x.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, -&delta);
                }
            }
        }
    }
    rem
}

fn to_map(t: &Terms) -> BTreeMap<Grevlex, CycNum> {
    t.iter().map(|(m, c)| (Grevlex(m.clone()), c.clone())).collect()
}

/// `lcm/lt(a)·a - lcm/lt(b)·b` for monic `a`, `b`.
fn s_poly(a: &Terms, b: &Terms) -> BTreeMap<Grevlex, CycNum> {
    let l = a[0].0.lcm(&b[0].0);
    let sa = a[0].0.quotient(&l);
    let sb = b[0].0.quotient(&l);
    let mut out: BTreeMap<Grevlex, CycNum> = BTreeMap::new();
    for (m, c) in &a[1..] {
        out.insert(Grevlex(m.mul(&sa)), c.clone());
    }
    for (m, c) in &b[1..] {
        let key = Grevlex(m.mul(&sb));
        let v = match out.remove(&key) {
            Some(x) => &x - c,
            None => -c,
        };
        if !v.is_zero() {
            out.insert(key, v);
        }
    }
    out
}

pub fn groebner(gens: &[Polynomial]) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, Polynomial::nvars);
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens {
        let mut t = to_terms(g);
        if t.is_empty() {
            continue;
        }
        make_monic(&mut t);
        basis.push(t);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    while !pairs.is_empty() {
        // normal selection: smallest lcm, ties by insertion order
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = basis[a][0].0.lcm(&basis[b][0].0);
                let l2 = basis[c][0].0.lcm(&basis[d][0].0);
                grevlex_cmp(&l1, &l2)
            })
            .expect("nonempty");
        let (i, j) = pairs.remove(k);
        done.insert((i, j));
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|t| {
            t != i
                && t != j
                && basis[t][0].0.divides(&l)
                && done.contains(&(i.min(t), i.max(t)))
                && done.contains(&(j.min(t), j.max(t)))
        });
        if chain {
            continue;
        }
        let r = reduce(s_poly(&basis[i], &basis[j]), &basis);
        if r.is_empty() {
            continue;
        }
        let mut t = from_map(r);
        make_monic(&mut t);
        let n = basis.len();
        basis.push(t);
        for a in 0..n {
            pairs.push((a, n));
        }
    }
    GroebnerBasis {
        nvars,
        polys: interreduce(basis),
    }
}

/// Drops redundant leading terms, fully reduces tails, sorts by leading term.
fn interreduce(basis: Vec<Terms>) -> Vec<Terms> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lt = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(t, h)| {
            t != k && h[0].0.divides(lt) && (h[0].0 != *lt || t < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != k)
            .map(|(_, h)| h.clone())
            .collect();
        let head = minimal[k][0].clone();
        let tail: Terms = minimal[k][1..].to_vec();
        let mut t = vec![head];
        t.extend(from_map(reduce(to_map(&tail), &others)));
        out.push(t);
    }
    out.sort_by(|a, b| grevlex_cmp(&a[0].0, &b[0].0));
    out
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.polys.iter().map(|g| &g[0].0).collect()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .map(|g| Polynomial::from_terms(self.nvars, g.iter().cloned()))
            .collect()
    }

    /// Remainder of `p`, supported on standard monomials.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let r = reduce(to_map(&to_terms(p)), &self.polys);
        Polynomial::from_terms(p.nvars(), r.into_iter().map(|(m, c)| (m.0, c)))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|g| g[0].0.divides(m))
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for j in 0..self.polys.len() {
            for i in 0..j {
                if !reduce(s_poly(&self.polys[i], &self.polys[j]), &self.polys).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
