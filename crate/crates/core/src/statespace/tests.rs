use super::*;
use crate::polynomial::{default_names, parse_poly};
use crate::quasihom::analyze;
use crate::rational::q;
use crate::symmetry::{generate_group, ClosureOptions};

fn space(s: &str, n: usize, gens: &[GroupElement]) -> StateSpace {
    let f = parse_poly(s, &default_names(n)).unwrap();
    let w = analyze(&f).unwrap().weights;
    let g = generate_group(gens, &f, &w, ClosureOptions::default()).unwrap();
    StateSpace::build(&f, &w, g, &RingCache::new()).unwrap()
}

const MAIN: &str = "x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9";

fn main_space() -> StateSpace {
    let j = GroupElement::diagonal(vec![q(1, 4), q(1, 2), q(1, 12), q(1, 6)]);
    space(MAIN, 4, &[j])
}

#[test]
fn main_example_diamond() {
    let sp = main_space();
    let d = assemble_diamond(&sp).unwrap();
    assert_eq!(d.d, 2);
    assert_eq!(d.h, vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]);
    assert_eq!(d.total, 24);
    assert!(d.outside.is_empty());
    let v = verify_theorem(&sp, &d).unwrap();
    assert!(v.all_pass(), "{v:?}");
    assert!(sp.invariants_are_fixed());
    for b in 0..sp.blocks.len() {
        assert_eq!(sp.invariants_dim_oracle(b), sp.blocks[b].invariants.len());
    }
}

#[test]
fn main_example_charges() {
    let sp = main_space();
    let j = sp.jf_index().unwrap();
    let j6 = sp.group.element(j).pow(6);
    let s = sp.sector_index(&j6).unwrap();
    let sec = &sp.sectors[s];
    // coordinates on Fix(j^6) are x2, x4
    let x4sq = Polynomial::monomial(Monomial(vec![0, 2]), CycNum::one(1));
    assert_eq!(charges(&x4sq, sec).unwrap(), Charges { q_l: q(1, 1), q_r: q(1, 1) });
    let one = Polynomial::one(0);
    assert_eq!(
        charges(&one, &sp.sectors[j]).unwrap(),
        Charges { q_l: Q::zero(), q_r: q(2, 1) }
    );
    assert_eq!(charges(&Polynomial::one(4), &sp.sectors[0]).unwrap(), Charges { q_l: Q::zero(), q_r: Q::zero() });
    for sec in &sp.sectors {
        let dg = Q::from_integer(sec.fixed.d_g() as i64);
        for c in &sec.charges {
            assert_eq!(c.q_r - c.q_l, dg - sec.age * Q::from_integer(2));
        }
    }
}

#[test]
fn jf_acts_by_degree_shift() {
    let sp = main_space();
    let j = sp.jf_index().unwrap();
    for (b, block) in sp.blocks.iter().enumerate().take(40) {
        let m = sp.action_matrix(j, b);
        for (p, e) in block.elements.iter().enumerate() {
            let sec = &sp.sectors[e.sector];
            let deg = sec.ring.degrees[e.basis];
            let expected = CycNum::root_of_unity(sp.conductor, frac(sec.fixed.sum_complement_q - deg)).unwrap();
            assert_eq!(m[p][p], expected);
        }
        assert!(sp.reynolds_is_idempotent(b));
    }
}

#[test]
fn fermat_sector_invariants() {
    for (r, m) in [(2i64, 3u32), (3, 2), (4, 5)] {
        let e = r as u32 * m;
        let sp = space(&format!("x1^{e}"), 1, &[GroupElement::diagonal(vec![q(1, r)])]);
        assert_eq!(sp.dim(), m as usize);
        let mut found = Vec::new();
        for (b, block) in sp.blocks.iter().enumerate() {
            for v in &block.invariants {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                assert_eq!(nz.len(), 1);
                let el = block.elements[nz[0]];
                assert!(sp.sectors[el.sector].g.is_identity());
                found.push(sp.sectors[el.sector].ring.basis[el.basis].exps()[0]);
            }
            assert_eq!(sp.invariants_dim_oracle(b), block.invariants.len());
        }
        found.sort();
        let expected: Vec<u32> = (0..m).map(|n| r as u32 * n).collect();
        assert_eq!(found, expected);
    }
}

#[test]
fn quintic_transposition_swaps_sectors() {
    let f = "x1^5+x2^5+x3^5+x4^5+x5^5";
    let j = GroupElement::diagonal(vec![q(1, 5); 5]);
    let t = GroupElement::from_cycles(5, &[vec![0, 1]]);
    let c = GroupElement::from_cycles(5, &[vec![1, 2]]);
    let sp = space(f, 5, &[t.clone(), c, j.clone()]);
    let h = sp.group.index_of(&t).unwrap();
    let c123 = GroupElement::from_cycles(5, &[vec![0, 1, 2]]);
    let c132 = GroupElement::from_cycles(5, &[vec![0, 2, 1]]);
    for k in 0..5 {
        let g = sp.group.index_of(&c123.compose(&j.pow(k))).unwrap();
        let g2 = sp.group.index_of(&c132.compose(&j.pow(k))).unwrap();
        assert_eq!(sp.transport(h, g).target, g2);
    }
    assert!(matches!(
        check_preconditions(&sp.weights, &sp.group),
        Err(StateSpaceError::PreconditionFailed(Precondition::NotInSL(_)))
    ));
}

#[test]
fn missing_j_is_a_precondition_failure() {
    let f = parse_poly("x1^5+x2^5+x3^5+x4^5+x5^5", &default_names(5)).unwrap();
    let w = analyze(&f).unwrap().weights;
    let g = GroupElement::diagonal(vec![q(1, 5), q(4, 5), Q::zero(), Q::zero(), Q::zero()]);
    let group = generate_group(&[g], &f, &w, ClosureOptions::default()).unwrap();
    assert_eq!(
        check_preconditions(&w, &group).unwrap_err(),
        StateSpaceError::PreconditionFailed(Precondition::MissingJ)
    );
}

#[test]
fn non_abelian_sl_group() {
    // x^4 in four variables with a phased transposition and a 3-cycle
    let f = "x1^4+x2^4+x3^4+x4^4";
    let a = GroupElement::new(vec![1, 0, 2, 3], vec![q(1, 4), q(1, 4), Q::zero(), Q::zero()]);
    let b = GroupElement::from_cycles(4, &[vec![0, 1, 2]]);
    let j = GroupElement::diagonal(vec![q(1, 4); 4]);
    let sp = space(f, 4, &[a, b, j]);
    assert!(sp.group.is_sl());
    let d = assemble_diamond(&sp).unwrap();
    let v = verify_theorem(&sp, &d).unwrap();
    assert!(v.all_pass(), "{v:?}\n{d}");
    assert!(sp.invariants_are_fixed());
    for b in 0..sp.blocks.len() {
        assert_eq!(sp.invariants_dim_oracle(b), sp.blocks[b].invariants.len());
        assert!(sp.reynolds_is_idempotent(b));
    }
}
