//! Closure of a generated group of monomial symmetries.

use std::collections::{HashMap, VecDeque};

use super::{GroupElement, SymmetryError};
use crate::polynomial::{Polynomial, WeightSystem};
use crate::rational::lcm_all;

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub cap: usize,
    pub require_j: bool,
    pub require_sl: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            cap: DEFAULT_CLOSURE_CAP,
            require_j: false,
            require_sl: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    generators: Vec<GroupElement>,
    inverses: Vec<usize>,
    /// Classes as sorted element indices, ordered by smallest member.
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn nvars(&self) -> usize {
        self.elements[0].n()
    }

    /// Canonically sorted; the identity is at index 0.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of `h·g·h⁻¹`.
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.index[&self.elements[h].conjugate(&self.elements[g])]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.conj(h, g) == g).collect()
    }

    /// Lcm of all denominators needed to write matrices and eigenvectors.
    pub fn conductor(&self) -> u64 {
        lcm_all(self.elements.iter().map(GroupElement::conductor))
    }

    pub fn is_sl(&self) -> bool {
        self.generators.iter().all(GroupElement::is_sl)
    }

    /// Builds the group from already-closed element data; used by tests.
    fn from_elements(mut elements: Vec<GroupElement>, generators: Vec<GroupElement>) -> Self {
        elements.sort();
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let inverses = elements.iter().map(|g| index[&g.inverse()]).collect();
        let n = elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for s in &generators {
                    let y = index[&s.conjugate(&elements[x])];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        FiniteGroup {
            elements,
            index,
            generators,
            inverses,
            classes,
            class_of,
        }
    }
}

/// Closes `generators` under composition after checking each is a
/// weight-preserving symmetry of `f`.
pub fn generate_group(
    generators: &[GroupElement],
    f: &Polynomial,
    w: &WeightSystem,
    opts: ClosureOptions,
) -> Result<FiniteGroup, SymmetryError> {
    let n = f.nvars();
    for g in generators {
        if g.n() != n {
            return Err(SymmetryError::ArityMismatch {
                expected: n,
                found: g.n(),
            });
        }
        if (0..n).any(|i| w.q[i] != w.q[g.sigma()[i]]) {
            return Err(SymmetryError::NotWeightPreserving(g.to_string()));
        }
        if g.apply(f) != *f {
            return Err(SymmetryError::NotASymmetry(g.to_string()));
        }
        if opts.require_sl && !g.is_sl() {
            return Err(SymmetryError::NotInSL(g.to_string()));
        }
    }
    let id = GroupElement::identity(n);
    let mut seen: HashMap<GroupElement, ()> = HashMap::from([(id.clone(), ())]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = x.compose(s);
            if !seen.contains_key(&y) {
                if elements.len() >= opts.cap {
                    return Err(SymmetryError::ClosureCapExceeded(opts.cap));
                }
                seen.insert(y.clone(), ());
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    let group = FiniteGroup::from_elements(elements, generators.to_vec());
    if opts.require_j && !group.contains(&super::make_jf(w)) {
        return Err(SymmetryError::MissingJ);
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{default_names, parse_poly};
    use crate::quasihom::analyze;
    use crate::rational::q;
    use crate::symmetry::make_jf;

    fn setup(s: &str, n: usize) -> (Polynomial, WeightSystem) {
        let f = parse_poly(s, &default_names(n)).unwrap();
        let w = analyze(&f).unwrap().weights;
        (f, w)
    }

    const QUINTIC: &str = "x1^5+x2^5+x3^5+x4^5+x5^5";

    #[test]
    fn cyclic_group_of_jf() {
        let (f, w) = setup("x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9", 4);
        let g = generate_group(&[make_jf(&w)], &f, &w, ClosureOptions::default()).unwrap();
        assert_eq!(g.order(), 12);
        assert!(g.element(0).is_identity());
        assert_eq!(g.classes().len(), 12);
        assert!(g.is_sl());
    }

    #[test]
    fn quintic_s3_times_j() {
        let (f, w) = setup(QUINTIC, 5);
        let gens = [
            GroupElement::from_cycles(5, &[vec![0, 1]]),
            GroupElement::from_cycles(5, &[vec![1, 2]]),
            make_jf(&w),
        ];
        let g = generate_group(&gens, &f, &w, ClosureOptions::default()).unwrap();
        assert_eq!(g.order(), 30);
        // S_3 has three classes; J is central
        assert_eq!(g.classes().len(), 15);
        assert!(!g.is_sl());
        let err = generate_group(
            &gens,
            &f,
            &w,
            ClosureOptions {
                require_sl: true,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert_eq!(err, SymmetryError::NotInSL("perm(1 2)".into()));
        for h in g.elements() {
            assert_eq!(h.compose(&make_jf(&w)), make_jf(&w).compose(h));
        }
    }

    #[test]
    fn non_sl_diagonal_rejected() {
        let (f, w) = setup(QUINTIC, 5);
        let g = GroupElement::diagonal(vec![q(1, 5), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let err = generate_group(
            &[g],
            &f,
            &w,
            ClosureOptions {
                require_sl: true,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, SymmetryError::NotInSL(_)));
    }

    #[test]
    fn missing_j_and_cap() {
        let (f, w) = setup(QUINTIC, 5);
        let g = GroupElement::diagonal(vec![q(1, 5), q(4, 5), q(0, 1), q(0, 1), q(0, 1)]);
        let opts = ClosureOptions {
            require_j: true,
            ..Default::default()
        };
        assert_eq!(
            generate_group(std::slice::from_ref(&g), &f, &w, opts).unwrap_err(),
            SymmetryError::MissingJ
        );
        let capped = ClosureOptions {
            cap: 3,
            ..Default::default()
        };
        assert_eq!(
            generate_group(&[g], &f, &w, capped).unwrap_err(),
            SymmetryError::ClosureCapExceeded(3)
        );
    }

    #[test]
    fn rejects_non_symmetries() {
        let (f, w) = setup("x1^2*x2 + x2^3", 2);
        let bad = GroupElement::diagonal(vec![q(1, 6), q(1, 3)]);
        assert!(matches!(
            generate_group(&[bad], &f, &w, ClosureOptions::default()),
            Err(SymmetryError::NotASymmetry(_))
        ));
        let (f, w) = setup("x1^3 + x2^6", 2);
        let swap = GroupElement::from_cycles(2, &[vec![0, 1]]);
        assert!(matches!(
            generate_group(&[swap], &f, &w, ClosureOptions::default()),
            Err(SymmetryError::NotWeightPreserving(_))
        ));
    }

    #[test]
    fn group_axioms_hold() {
        let (f, w) = setup(QUINTIC, 5);
        let gens = [
            GroupElement::from_cycles(5, &[vec![0, 1, 2]]),
            GroupElement::diagonal(vec![q(1, 5), q(4, 5), q(0, 1), q(0, 1), q(0, 1)]),
        ];
        let g = generate_group(&gens, &f, &w, ClosureOptions::default()).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                assert!(ab < g.order());
            }
        }
        let total: usize = g.classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
    }
}
