//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Run with `cargo test -p lgorb-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lgorb::jacobian::{poincare_oracle, quotient_ring, JacobianError, RingCache};
use lgorb::linalg;
use lgorb::polynomial::{default_names, parse_poly, PolyError, WeightSystem};
use lgorb::quasihom::analyze;
use lgorb::rational::{q, Q};
use lgorb::statespace::{
    assemble_diamond, check_preconditions, phi_gram, psi, verify_theorem, Charges, Diamond,
    Precondition, StateSpace, StateSpaceError,
};
use lgorb::symmetry::{
    generate_group, make_jf, rho_constant, ClosureOptions, FiniteGroup, GroupElement,
    SymmetryError,
};
use lgorb::Polynomial;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MAIN: &str = "x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9";
const QUINTIC: &str = "x1^5 + x2^5 + x3^5 + x4^5 + x5^5";
const STAR: &str = "x1^4 + x1*(x2^3 + x3^3 + x4^3) + x2^2*x3^2 + x2^2*x4^2 + x3^2*x4^2";

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn setup(s: &str, n: usize) -> (Polynomial, WeightSystem) {
    let f = parse_poly(s, &default_names(n)).unwrap();
    let w = analyze(&f).unwrap().weights;
    (f, w)
}

fn group(f: &Polynomial, w: &WeightSystem, gens: &[GroupElement]) -> FiniteGroup {
    generate_group(gens, f, w, ClosureOptions::default()).unwrap()
}

fn main_space(cache: &RingCache) -> StateSpace {
    let (f, w) = setup(MAIN, 4);
    let g = group(&f, &w, &[make_jf(&w)]);
    StateSpace::build(&f, &w, g, cache).unwrap()
}

fn quintic_gens(w: &WeightSystem) -> Vec<GroupElement> {
    vec![
        GroupElement::from_cycles(5, &[vec![0, 1]]),
        GroupElement::from_cycles(5, &[vec![1, 2]]),
        make_jf(w),
    ]
}

fn quintic_space(cache: &RingCache) -> StateSpace {
    let (f, w) = setup(QUINTIC, 5);
    let g = group(&f, &w, &quintic_gens(&w));
    StateSpace::build(&f, &w, g, cache).unwrap()
}

fn diamond_from(entries: &[((usize, usize), usize)], d: usize) -> Vec<Vec<usize>> {
    let mut h = vec![vec![0; d + 1]; d + 1];
    for &((a, b), k) in entries {
        h[a][b] = k;
    }
    h
}

fn show_h(h: &[Vec<usize>]) -> String {
    h.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn secs(t: Duration) -> String {
    format!("{:.1}s", t.as_secs_f64())
}

fn criterion_1(cache: &RingCache) -> Outcome {
    let start = Instant::now();
    let sp = main_space(cache);
    let d = assemble_diamond(&sp);
    let elapsed = start.elapsed();
    let expected = diamond_from(&[((0, 0), 1), ((2, 2), 1), ((0, 2), 1), ((2, 0), 1), ((1, 1), 20)], 2);
    let weights_ok = sp.weights.q == vec![q(1, 4), q(1, 2), q(1, 12), q(1, 6)];
    match d {
        Ok(Diamond { h, total, outside, .. }) => {
            let pass = h == expected && outside.is_empty() && total == 24 && weights_ok
                && elapsed <= Duration::from_secs(60);
            outcome(
                pass,
                format!(
                    "h = {}, total {total}, weights ok {weights_ok}, {} (limit 60s)",
                    show_h(&h),
                    secs(elapsed)
                ),
            )
        }
        Err(e) => outcome(false, format!("diamond failed: {e}")),
    }
}

fn criterion_2(cache: &RingCache) -> Outcome {
    let start = Instant::now();
    let sp = quintic_space(cache);
    let order = sp.group.order();
    let expected = diamond_from(
        &[
            ((0, 0), 1),
            ((3, 3), 1),
            ((3, 0), 1),
            ((0, 3), 1),
            ((1, 1), 11),
            ((2, 2), 11),
            ((2, 1), 3),
            ((1, 2), 3),
        ],
        3,
    );
    let d = assemble_diamond(&sp);
    let elapsed = start.elapsed();
    let pre = match check_preconditions(&sp.weights, &sp.group) {
        Ok(()) => "preconditions hold".to_string(),
        Err(e) => e.to_string(),
    };
    let in_time = elapsed <= Duration::from_secs(600);
    match d {
        Ok(d) => outcome(
            d.h == expected && d.outside.is_empty() && order == 30 && in_time,
            format!(
                "|G| = {order}, h = {}, outside {:?}, expected {}; {pre}; {} (limit 600s)",
                show_h(&d.h),
                d.outside,
                show_h(&expected),
                secs(elapsed)
            ),
        ),
        Err(e) => {
            let fractional: Vec<String> = sp
                .blocks
                .iter()
                .filter(|b| !b.invariants.is_empty() && !b.is_integral())
                .map(|b| format!("{}:{}", b.bidegree, b.invariants.len()))
                .collect();
            outcome(
                false,
                format!(
                    "|G| = {order}, diamond not assembled: {e}; {pre}; invariants at fractional bidegrees {}; {}",
                    fractional.join(" "),
                    secs(elapsed)
                ),
            )
        }
    }
}

/// `Π(1/q_k − 1)`.
fn mu_by_product(w: &WeightSystem) -> Q {
    w.q.iter()
        .fold(Q::one(), |acc, x| acc * (Q::one() / *x - Q::one()))
}

fn criterion_3() -> Outcome {
    let cases: [(&str, usize, usize); 4] =
        [(QUINTIC, 5, 1024), (MAIN, 4, 165), (STAR, 4, 81), ("x1^3 + x2^3", 2, 4)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (s, n, expected) in cases {
        let (f, w) = setup(s, n);
        let mu = quotient_ring(&f, &w).unwrap().mu();
        let product = mu_by_product(&w);
        pass &= mu == expected && product == Q::from_integer(expected as i64);
        parts.push(format!("{mu} (product {product}, expected {expected})"));
    }
    // the quintic basis is exactly the exponent vectors with entries <= 3
    let (f, w) = setup(QUINTIC, 5);
    let ring = quotient_ring(&f, &w).unwrap();
    pass &= ring.basis.iter().all(|m| m.exps().iter().all(|&a| a <= 3));
    outcome(pass, format!("quintic/main/star/two cubes: {}", parts.join(", ")))
}

fn criterion_4(cache: &RingCache) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, m) in [(2i64, 3u32), (3, 2), (4, 5)] {
        let (f, w) = setup(&format!("x1^{}", r as u32 * m), 1);
        let g = group(&f, &w, &[GroupElement::diagonal(vec![q(1, r)])]);
        let sp = StateSpace::build(&f, &w, g, cache).unwrap();
        let mut found = Vec::new();
        let mut single = true;
        for block in &sp.blocks {
            for v in &block.invariants {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                if nz.len() != 1 {
                    single = false;
                    continue;
                }
                let e = block.elements[nz[0]];
                if !sp.sectors[e.sector].g.is_identity() {
                    single = false;
                    continue;
                }
                found.push(sp.sectors[e.sector].ring.basis[e.basis].exps()[0]);
            }
        }
        found.sort();
        let expected: Vec<u32> = (0..m).map(|n| r as u32 * n).collect();
        pass &= single && sp.dim() == m as usize && found == expected;
        parts.push(format!("(r,m)=({r},{m}): dim {}, exponents {found:?}", sp.dim()));
    }
    outcome(pass, parts.join("; "))
}

/// Random invertible polynomial in at most four variables, as atoms of
/// Fermat, chain and loop type.
fn random_invertible(rng: &mut StdRng) -> (String, usize) {
    let n = rng.gen_range(1..=4usize);
    let mut terms = Vec::new();
    let mut start = 1;
    while start <= n {
        let size = rng.gen_range(1..=n - start + 1);
        let vars: Vec<usize> = (start..start + size).collect();
        let kind = if size == 1 { 0 } else { rng.gen_range(1..=2) };
        let a: Vec<u32> = vars
            .iter()
            .map(|_| rng.gen_range(if size == 1 { 2..=7 } else { 2..=4 }))
            .collect();
        for (i, &v) in vars.iter().enumerate() {
            let next = match kind {
                0 => None,
                1 => vars.get(i + 1).copied(),
                _ => Some(vars[(i + 1) % size]),
            };
            terms.push(match next {
                Some(u) => format!("x{v}^{}*x{u}", a[i]),
                None => format!("x{v}^{}", a[i]),
            });
        }
        start += size;
    }
    (terms.join(" + "), n)
}

fn criterion_5(main: &StateSpace, quintic: &StateSpace) -> Outcome {
    let mut rng = StdRng::seed_from_u64(20240611);
    let mut polys: Vec<(String, usize)> = (0..12).map(|_| random_invertible(&mut rng)).collect();
    polys.push((MAIN.into(), 4));
    polys.push((QUINTIC.into(), 5));
    let mut graded_fail = Vec::new();
    for (s, n) in &polys {
        let (f, w) = setup(s, *n);
        let ring = quotient_ring(&f, &w).unwrap();
        let oracle = poincare_oracle(&w);
        if ring.graded_dimensions() != oracle
            || Q::from_integer(ring.mu() as i64) != mu_by_product(&w)
        {
            graded_fail.push(s.clone());
        }
    }
    let mut blocks = 0;
    let mut inv_fail = Vec::new();
    for sp in [main, quintic] {
        for (b, block) in sp.blocks.iter().enumerate() {
            blocks += 1;
            let oracle = sp.invariants_dim_oracle(b);
            if oracle != block.invariants.len() {
                inv_fail.push(format!("{}: {} vs {oracle}", block.bidegree, block.invariants.len()));
            }
        }
    }
    outcome(
        graded_fail.is_empty() && inv_fail.is_empty(),
        format!(
            "graded dims = product oracle on {} rings (failures {graded_fail:?}); invariant dims = class oracle on {blocks} blocks (failures {inv_fail:?})",
            polys.len()
        ),
    )
}

fn psi_bijective(sp: &StateSpace, b: usize) -> bool {
    let (target, images) = psi(sp, b);
    let k = sp.blocks[b].invariants.len();
    if sp.blocks[target].invariants.len() != k || linalg::rank(&images) != k {
        return false;
    }
    let mut joint = sp.blocks[target].invariants.clone();
    joint.extend(images);
    linalg::rank(&joint) == k
}

fn phi_full_rank(sp: &StateSpace, b: usize) -> bool {
    let (d, bd) = (
        Q::from_integer(sp.nvars() as i64 - 2),
        sp.blocks[b].bidegree,
    );
    let dual = Charges {
        q_l: d - bd.q_r,
        q_r: d - bd.q_l,
    };
    let k = sp.blocks[b].invariants.len();
    let Some(b2) = sp.block_index(dual) else {
        return k == 0;
    };
    if sp.blocks[b2].invariants.len() != k {
        return false;
    }
    linalg::rank(&phi_gram(sp, b, b2)) == k
}

fn criterion_6(main: &StateSpace, quintic: &StateSpace) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    // closed test groups
    let wm = setup(MAIN, 4).1;
    let (fq, wq) = setup(QUINTIC, 5);
    let (f4, w4) = setup("x1^4 + x2^4 + x3^4 + x4^4", 4);
    let quintic_sld: Vec<GroupElement> = (1..5)
        .map(|i| {
            let mut p = vec![Q::zero(); 5];
            p[0] = q(1, 5);
            p[i] = q(4, 5);
            GroupElement::diagonal(p)
        })
        .chain([make_jf(&wq)])
        .collect();
    let non_abelian = vec![
        GroupElement::new(vec![1, 0, 2, 3], vec![q(1, 4), q(1, 4), Q::zero(), Q::zero()]),
        GroupElement::from_cycles(4, &[vec![0, 1, 2]]),
        make_jf(&w4),
    ];
    let groups: Vec<(&str, FiniteGroup, &WeightSystem)> = vec![
        ("main <j>", main.group.clone(), &wm),
        ("quintic S3xJ", quintic.group.clone(), &wq),
        ("quintic SL diag", group(&fq, &wq, &quintic_sld), &wq),
        ("x^4 non-abelian", group(&f4, &w4, &non_abelian), &w4),
    ];
    let mut ages_ok = true;
    let mut min_age_ok = true;
    for (name, g, w) in &groups {
        let n = g.nvars();
        let jf = make_jf(w);
        let sl_cy = g.is_sl() && w.sum().is_one();
        for el in g.elements() {
            let sum = el.age() + el.inverse().age();
            if sum != Q::from_integer((n - el.fixed_dim()) as i64) {
                ages_ok = false;
                notes.push(format!("{name}: age({el}) + age(inverse) = {sum}"));
            }
            if sl_cy && !el.is_identity() && el.fixed_dim() == 0 {
                let a = el.age();
                if a < Q::one() || (a == Q::one() && *el != jf) {
                    min_age_ok = false;
                    notes.push(format!("{name}: age({el}) = {a}"));
                }
            }
        }
    }
    pass &= ages_ok && min_age_ok;
    notes.insert(
        0,
        format!(
            "ages over {} groups: sum rule {ages_ok}, minimum at j_f {min_age_ok}",
            groups.len()
        ),
    );

    // cocycle on random triples in the non-abelian group
    let g = &groups[3].1;
    let mut rng = StdRng::seed_from_u64(7);
    let n = g.conductor().max(8) as u32;
    let mut cocycle_ok = true;
    for _ in 0..100 {
        let pick = |rng: &mut StdRng| g.element(rng.gen_range(0..g.order())).clone();
        let (h1, h2, x) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let lhs = &rho_constant(&h2, &h1.conjugate(&x), &w4, n) * &rho_constant(&h1, &x, &w4, n);
        let rhs = rho_constant(&h2.compose(&h1), &x, &w4, n);
        if lhs != rhs {
            cocycle_ok = false;
            notes.push(format!("cocycle fails at h1={h1} h2={h2} g={x}"));
        }
    }
    pass &= cocycle_ok;
    notes.push(format!("rho cocycle on 100 triples {cocycle_ok}"));

    for (name, sp) in [("main", main), ("quintic", quintic)] {
        let nb = sp.blocks.len();
        let reynolds = (0..nb).all(|b| sp.reynolds_is_idempotent(b));
        let fixed = sp.invariants_are_fixed();
        let occupied: Vec<usize> = (0..nb).filter(|&b| !sp.blocks[b].invariants.is_empty()).collect();
        let psi_bad: Vec<String> = occupied
            .iter()
            .filter(|&&b| !psi_bijective(sp, b))
            .map(|&b| sp.blocks[b].bidegree.to_string())
            .collect();
        let phi_bad: Vec<String> = occupied
            .iter()
            .filter(|&&b| !phi_full_rank(sp, b))
            .map(|&b| sp.blocks[b].bidegree.to_string())
            .collect();
        pass &= reynolds && fixed && psi_bad.is_empty() && phi_bad.is_empty();
        notes.push(format!(
            "{name}: R^2 = R on {nb} blocks {reynolds}, invariants fixed {fixed}, Psi failures {psi_bad:?}, Phi Gram failures {phi_bad:?}"
        ));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_7(cache: &RingCache) -> Outcome {
    let mut parts = Vec::new();
    let mixed = parse_poly("x1^3 + x1*x2 + x2^3", &default_names(2));
    let mixed_ok = matches!(mixed, Err(PolyError::MixedQuadratic(_)));
    parts.push(format!("mixed quadratic: {mixed:?}"));

    let (fq, wq) = setup(QUINTIC, 5);
    let opts = ClosureOptions {
        require_sl: true,
        ..ClosureOptions::default()
    };
    let non_sl = generate_group(&quintic_gens(&wq), &fq, &wq, opts);
    let non_sl_ok = matches!(non_sl, Err(SymmetryError::NotInSL(_)));
    parts.push(format!("non-SL generator: {:?}", non_sl.map(|g| g.order())));

    let names = default_names(4);
    let eps0 = parse_poly("x1^3 + x1*(x2^2 + x3^2 + x4^2)", &names).unwrap();
    let eps1 = parse_poly("x1^3 + x1*(x2^2 + x3^2 + x4^2) + x2*x3*x4", &names).unwrap();
    let w = WeightSystem::from_q(vec![q(1, 3); 4]);
    let r0 = quotient_ring(&eps0, &w).map(|r| r.mu());
    let r1 = quotient_ring(&eps1, &w).map(|r| r.mu());
    let eps_ok = matches!(r0, Err(JacobianError::NotIsolated { .. })) && r1 == Ok(16);
    parts.push(format!("epsilon = 0: {r0:?}, epsilon = 1: mu {r1:?}"));

    let g = GroupElement::diagonal(vec![q(1, 5), q(4, 5), Q::zero(), Q::zero(), Q::zero()]);
    let grp = group(&fq, &wq, &[g]);
    let pre = check_preconditions(&wq, &grp);
    let sp = StateSpace::build(&fq, &wq, grp, cache).unwrap();
    let dummy = Diamond {
        d: 3,
        h: vec![vec![0; 4]; 4],
        outside: Vec::new(),
        total: 0,
    };
    let verify = verify_theorem(&sp, &dummy).map(|v| v.all_pass());
    let missing = StateSpaceError::PreconditionFailed(Precondition::MissingJ);
    let missing_ok = pre.as_ref().err() == Some(&missing) && verify.as_ref().err() == Some(&missing);
    parts.push(format!("missing j_f: {pre:?} / verify {verify:?}"));

    outcome(mixed_ok && non_sl_ok && eps_ok && missing_ok, parts.join("; "))
}

fn main() -> ExitCode {
    let cache = RingCache::new();
    let mut results = Vec::new();
    let mut report = |id: usize, name: &str, o: Outcome| {
        println!(
            "criterion {id} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push(o.pass);
    };
    report(1, "main example diamond", criterion_1(&cache));
    report(2, "quintic example diamond", criterion_2(&cache));
    report(3, "Milnor numbers", criterion_3());
    report(4, "Fermat sector invariants", criterion_4(&cache));
    let main_sp = main_space(&cache);
    let quintic_sp = quintic_space(&cache);
    report(5, "oracle equivalence", criterion_5(&main_sp, &quintic_sp));
    report(6, "invariant suites", criterion_6(&main_sp, &quintic_sp));
    report(7, "negative paths", criterion_7(&cache));
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
