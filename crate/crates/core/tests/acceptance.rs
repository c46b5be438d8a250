//! Acceptance criteria, one line each. Exact arithmetic throughout, so every
//! tolerance is exact equality unless a line says otherwise.
//!
//! Criteria listed in `EXPECTED_FAILURES` are known to be out of reach and
//! print `FAIL` without failing the target; any other failure does.
//! `ACCEPTANCE_ONLY=1,5` runs a subset.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use silting_core::algebra::{AlgMatrix, Lambda, Vertex};
use silting_core::complexes::{
    g_vector, hom_dim, iso_in_homotopy, k0_class, minimize, random_radical_two_term, GVector,
    ProjComplex,
};
use silting_core::endo::{compare, compare_dims, end_algebra, lambda_m_dims, make_lambda_m};
use silting_core::equiv::{
    apply_automorphism, check_comm, nakayama_nu, omega_iterate, reduce_to_two_term, ringel_omega,
    AutoPair, NuDirection,
};
use silting_core::linalg::{SparseVec, Q};
use silting_core::silting::{
    build_tower, closed_form_nodes, coherence, exceptional_scan, fan, make_c, mutate,
    mutation_walk, negative_space, root_nodes, summands, tower_dim, AmTower, Direction,
    SiltingNode, Summands, WalkNode,
};

/// Criteria that cannot pass at desk scale; see the decisions ledger.
const EXPECTED_FAILURES: &[usize] = &[4];

const GRID: [(usize, usize); 11] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
    (2, 0),
    (3, 0),
];
const M_MAX: i64 = 5;
const WALK_DEPTH: usize = 6;
/// Full presentations are compared up to this total dimension.
const FULL_COMPARE_MAX: usize = 700;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Depth-6 walks, shared between criteria.
#[derive(Default)]
struct Walks(BTreeMap<(usize, usize), Vec<WalkNode>>);

impl Walks {
    fn get(&mut self, p: usize, q: usize) -> &[WalkNode] {
        self.0
            .entry((p, q))
            .or_insert_with(|| mutation_walk(lambda(p, q), WALK_DEPTH).expect("walk"))
    }
}

fn lambda(p: usize, q: usize) -> Lambda {
    Lambda::new(p, q).expect("grid point")
}

fn tower(p: usize, depth: usize) -> AmTower {
    build_tower(p, depth).expect("p >= 2")
}

/// `C_{-1}, C_0, …` as far as they exist: the tower for `p ≥ 2`, `P_1`,
/// `P_2`, `P_1 → P_2` for `p = 1`.
fn c_chain(l: Lambda, m_max: i64) -> Vec<ProjComplex> {
    if l.p >= 2 {
        let t = tower(l.p, m_max as usize);
        return (-1..=m_max)
            .map(|m| make_c(m, &t, l).expect("C_m"))
            .collect();
    }
    let mut d = AlgMatrix::zeros(1, 1);
    d.set(0, 0, SparseVec::unit(l.alpha(0)));
    let c1 = ProjComplex::two_term(l, (1, 0), (0, 1), d).expect("C_1");
    vec![
        ProjComplex::projective(l, Vertex::One, 0),
        ProjComplex::projective(l, Vertex::Two, 0),
        c1,
    ]
}

/// `a² + b²(1 + pq) − ab(p + q)` at the class of `P_1^a → P_2^b`.
fn euler_form(p: i64, q: i64, k0: GVector) -> i64 {
    let (a, b) = (-k0.0, k0.1);
    a * a + b * b * (1 + p * q) - a * b * (p + q)
}

fn chi(x: &ProjComplex) -> i64 {
    (-1..=1)
        .map(|r: i32| (if r % 2 == 0 { 1 } else { -1 }) * hom_dim(x, x, r).unwrap() as i64)
        .sum()
}

fn random_two_term(l: Lambda, rng: &mut ChaCha8Rng) -> ProjComplex {
    loop {
        let src = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let tgt = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        if src.0 + src.1 + tgt.0 + tgt.1 > 0 {
            return random_radical_two_term(l, src, tgt, 3, rng);
        }
    }
}

fn c1_euler() -> Outcome {
    let mut checked = 0;
    for (p, q) in GRID {
        let l = lambda(p, q);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + 10 * p as u64 + q as u64);
        let mut xs: Vec<ProjComplex> = (0..50).map(|_| random_two_term(l, &mut rng)).collect();
        xs.extend(c_chain(l, M_MAX));
        for x in &xs {
            let want = euler_form(p as i64, q as i64, k0_class(x));
            if chi(x) != want {
                return Outcome::new(
                    false,
                    format!("({p},{q}): χ = {} but the form gives {want} on {x}", chi(x)),
                );
            }
            checked += 1;
        }
    }
    Outcome::new(
        true,
        format!(
            "{checked} complexes (50 random per grid point plus every C_m, m ≤ {M_MAX}); exact"
        ),
    )
}

/// `(p, tower depth, largest m for the invertibility check)`.
const TOWER_LEVELS: [(usize, usize, usize); 4] = [(2, 12, 12), (3, 6, 5), (4, 4, 4), (5, 3, 3)];

fn c2_tower() -> Outcome {
    for p in 0..=5usize {
        for m in 0..=12i64 {
            let (a0, a1, a2) = (tower_dim(p, m - 1), tower_dim(p, m), tower_dim(p, m + 1));
            let pi = p as i128;
            if a2 != pi * a1 - a0 || a1 * a1 + a0 * a0 - pi * a0 * a1 != 1 {
                return Outcome::new(
                    false,
                    format!("dimension identity fails at p = {p}, m = {m}"),
                );
            }
        }
    }
    for (p, depth, square) in TOWER_LEVELS {
        let t = tower(p, depth);
        for m in 0..=depth + 1 {
            if t.dim(m as i64) as i128 != tower_dim(p, m as i64) {
                return Outcome::new(
                    false,
                    format!("built A_{m} has the wrong dimension for p = {p}"),
                );
            }
        }
        if let Err(e) = t.check(square) {
            return Outcome::new(false, format!("p = {p}: {e}"));
        }
    }
    let levels: Vec<String> = TOWER_LEVELS
        .iter()
        .map(|(p, d, s)| format!("p={p}: m≤{d}, square m≤{s}"))
        .collect();
    Outcome::new(
        true,
        format!(
            "identities for p ≤ 5, m ≤ 12; maps built and ranked for {}",
            levels.join(", ")
        ),
    )
}

fn end_table(q: usize, p: usize, m: i64) -> [[usize; 2]; 2] {
    let a = |k: i64| tower_dim(p, k) as usize;
    // rows and columns: C_{m−1}, C_m
    [
        [1 + q * a(m) * a(m - 1), p + q * a(m + 1) * a(m - 1)],
        [q * a(m) * a(m), 1 + q * a(m + 1) * a(m)],
    ]
}

fn p2_grid() -> impl Iterator<Item = (usize, usize)> {
    GRID.into_iter().filter(|&(p, _)| p >= 2)
}

fn c3_tilting_chain(nodes: &mut BTreeMap<(usize, usize, i64), SiltingNode>) -> Outcome {
    for (p, q) in p2_grid() {
        let l = lambda(p, q);
        let cs = c_chain(l, M_MAX);
        for m in 1..=M_MAX {
            let (x, y) = (&cs[m as usize], &cs[m as usize + 1]);
            let n = SiltingNode::new(x, y).expect("node");
            if !n.flags.tilting {
                return Outcome::new(
                    false,
                    format!("C_{}⊕C_{m} over ({p},{q}) is not tilting", m - 1),
                );
            }
            let got = [
                [n.homs.get(0, 0, 0).unwrap(), n.homs.get(0, 1, 0).unwrap()],
                [n.homs.get(1, 0, 0).unwrap(), n.homs.get(1, 1, 0).unwrap()],
            ];
            let want = end_table(q, p, m);
            if got != want {
                return Outcome::new(
                    false,
                    format!("({p},{q},{m}): End table {got:?}, expected {want:?}"),
                );
            }
            nodes.insert((p, q, m), n);
        }
    }
    Outcome::new(
        true,
        format!("p ≥ 2 grid points, m = 1..{M_MAX}: tilting and End tables exact"),
    )
}

fn c4_presentation(nodes: &BTreeMap<(usize, usize, i64), SiltingNode>) -> Outcome {
    let (mut full, mut dims_only, mut total) = (0, 0, 0);
    let mut failures = Vec::new();
    let mut anchor = None;
    for (p, q) in p2_grid() {
        let t = tower(p, M_MAX as usize + 1);
        for m in 1..=M_MAX {
            total += 1;
            let n = &nodes[&(p, q, m)];
            let d = |i, j| n.homs.get(i, j, 0).unwrap();
            let end_dims = [[d(0, 0), d(0, 1)], [d(1, 0), d(1, 1)]];
            let lm_dims = lambda_m_dims(q, m as usize, &t);
            let size: usize = lm_dims.iter().flatten().sum();
            if size > FULL_COMPARE_MAX {
                let r = compare_dims(&end_dims, &lm_dims);
                if !r.dims_match() {
                    failures.push(format!("({p},{q},{m}) dims: {:?}", r.mismatches));
                }
                dims_only += 1;
                continue;
            }
            let e = end_algebra(&n.summands).expect("End");
            let lm = make_lambda_m(p, q, m, &t).expect("Λ_m");
            let r = compare(&e.algebra, &lm).expect("compare");
            if !r.full_match() {
                failures.push(format!("({p},{q},{m}): {:?}", r.mismatches));
            }
            if (p, q, m) == (2, 1, 1) {
                anchor = Some((
                    e.total(),
                    r.relations.unwrap()[0].iter().flatten().sum::<usize>(),
                ));
            }
            full += 1;
        }
    }
    if anchor != Some((19, 8)) {
        failures.push(format!(
            "(2,1,1): total and relation dimension {anchor:?}, expected (19, 8)"
        ));
    }
    let head = format!(
        "full match on {full}/{total} points (total dim ≤ {FULL_COMPARE_MAX}); graded dims only on {dims_only}; (2,1,1): 19, 8"
    );
    if !failures.is_empty() {
        return Outcome::new(
            false,
            format!("{head}; mismatches: {}", failures.join("; ")),
        );
    }
    Outcome::new(
        dims_only == 0,
        if dims_only == 0 {
            head
        } else {
            format!("{head}; larger points out of memory reach")
        },
    )
}

fn c5_mutation(walks: &mut Walks) -> Outcome {
    let mut steps = 0;
    for (p, q) in GRID {
        let l = lambda(p, q);
        let cs = c_chain(l, M_MAX);
        let g: Vec<GVector> = cs.iter().map(|c| g_vector(c).unwrap()).collect();
        let mut node = root_nodes(l).unwrap()[0].clone();
        // g[i] is the class of C_{i−1}
        for m in 1..cs.len() - 1 {
            let k = node
                .g
                .iter()
                .position(|x| *x == g[m - 1])
                .expect("C_{m−2} is a summand");
            node = match mutate(&node, k, Direction::Plus) {
                Ok(n) => n,
                Err(e) => return Outcome::new(false, format!("({p},{q}) step {m}: {e}")),
            };
            let want: BTreeSet<GVector> = [g[m], g[m + 1]].into();
            if node.g.iter().copied().collect::<BTreeSet<_>>() != want {
                return Outcome::new(
                    false,
                    format!("({p},{q}) step {m}: {:?}, expected {want:?}", node.g),
                );
            }
            steps += 1;
        }
        let c = coherence(walks.get(p, q));
        if !c.holds() {
            return Outcome::new(
                false,
                format!(
                    "({p},{q}): {:?} {:?}",
                    c.inverse_failures, c.dichotomy_failures
                ),
            );
        }
    }
    Outcome::new(true, format!("{steps} μ^+ steps match C_m by g-vectors; μ^∓μ^± = id and the dichotomy hold on every depth-{WALK_DEPTH} walk"))
}

fn c6_classification(walks: &mut Walks) -> Outcome {
    let mut nodes = 0;
    for (p, q) in GRID {
        let l = lambda(p, q);
        let w = walks.get(p, q);
        let walk: BTreeSet<[GVector; 2]> = w.iter().map(|n| n.node.key()).collect();
        let closed: BTreeSet<[GVector; 2]> = closed_form_nodes(l, WALK_DEPTH)
            .unwrap()
            .iter()
            .map(|n| n.key())
            .collect();
        if walk != closed {
            let missing: Vec<_> = closed.difference(&walk).collect();
            let extra: Vec<_> = walk.difference(&closed).collect();
            return Outcome::new(
                false,
                format!("({p},{q}): missing {missing:?}, extra {extra:?}"),
            );
        }
        let pairs: Vec<[GVector; 2]> = w.iter().map(|n| n.node.g).collect();
        if let Err(e) = fan(&pairs) {
            return Outcome::new(false, format!("({p},{q}): {e}"));
        }
        let mut negative: Vec<usize> = w
            .iter()
            .filter(|n| n.node.flags.silting && !n.node.flags.tilting)
            .map(|n| {
                (0..2)
                    .flat_map(|i| (0..2).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| n.node.homs.get(i, j, -1).unwrap())
                    .sum()
            })
            .collect();
        negative.sort_unstable();
        let mut want = if q == 0 { vec![p] } else { vec![p, q] };
        want.sort_unstable();
        if negative != want {
            return Outcome::new(
                false,
                format!("({p},{q}): silting-not-tilting Hom dims {negative:?}, expected {want:?}"),
            );
        }
        nodes += w.len();
    }
    Outcome::new(true, format!(
        "{nodes} walk nodes equal the closed-form lists at depth {WALK_DEPTH}; silting-not-tilting Hom = k^p, k^q (one node when q = 0); arcs disjoint"
    ))
}

fn c7_negative() -> Outcome {
    let (mut shapes, mut samples) = (0, 0);
    for (p, q) in GRID {
        let r = negative_space(lambda(p, q), 8, 100, 7).expect("sampling");
        if let Some(s) = r.iter().find(|s| !s.holds()) {
            return Outcome::new(
                false,
                format!(
                    "({p},{q}) {:?}: {} presilting, null {} > {}",
                    s.shape, s.presilting, s.max_null_homotopic, s.null_bound
                ),
            );
        }
        shapes += r.len();
        samples += r.iter().map(|s| s.samples).sum::<usize>();
    }
    Outcome::new(true, format!("sampling evidence: {shapes} shapes, {samples} samples, 0 presilting, null-homotopic bound holds"))
}

fn c8_exceptional() -> Outcome {
    let mut points = 0;
    for (p, q) in GRID.into_iter().filter(|&(_, q)| q >= 1) {
        let r = exceptional_scan(lambda(p, q), 6, 100, 11).expect("scan");
        if !r.holds() {
            return Outcome::new(
                false,
                format!("({p},{q}): found {:?}, expected {:?}", r.found, r.expected),
            );
        }
        points += 1;
    }
    Outcome::new(true, format!("a + b ≤ 6 on {points} points with p, q ≥ 1: exactly P_1, P_1[1], ω(P_1), ω^-1(P_1)[1]; q = 0 not applicable"))
}

/// Summand classes with multiplicities; equal for two-term presilting
/// complexes exactly when they are isomorphic.
fn classes(x: &ProjComplex) -> Vec<(GVector, usize)> {
    match summands(x, 0).expect("summands") {
        Summands::Known(v) => {
            let mut c: Vec<(GVector, usize)> = v.iter().map(|(c, k)| (k0_class(c), *k)).collect();
            c.sort_unstable();
            c
        }
        Summands::Count(_) => panic!("two-term complexes split"),
    }
}

fn nu(x: &ProjComplex, dir: NuDirection) -> ProjComplex {
    nakayama_nu(x, dir).expect("ν")
}

fn c9_serre_ringel(walks: &mut Walks) -> Outcome {
    let mut parts = Vec::new();
    // ν ≅ ω∘ω
    for (p, q) in GRID {
        let l = lambda(p, q);
        let cs = c_chain(l, 1);
        let set = [
            cs[0].clone(),
            cs[1].clone(),
            ProjComplex::direct_sum(&[&cs[1], &cs[2]]),
        ];
        for x in &set {
            let oo = ringel_omega(&ringel_omega(x).unwrap()).unwrap();
            if !iso_in_homotopy(&nu(x, NuDirection::Forward), &oo, 0) {
                return Outcome::new(false, format!("({p},{q}): ν(X) ≇ ω(ω(X)) for X = {x}"));
            }
        }
    }
    parts.push("ν ≅ ω∘ω on P_1, P_2, C_0⊕C_1".to_string());

    // Serre pairing
    let mut pairs = 0;
    for (p, q) in GRID {
        let l = lambda(p, q);
        let cs = c_chain(l, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let set = [
            cs[0].clone(),
            cs[1].clone(),
            cs[0].shift(1),
            cs[2].clone(),
            random_two_term(l, &mut rng),
        ];
        for y in &set {
            let ny = nu(y, NuDirection::Forward);
            for x in &set {
                for r in -1..=1 {
                    if hom_dim(x, &ny.shift(r), 0).unwrap() != hom_dim(y, &x.shift(-r), 0).unwrap()
                    {
                        return Outcome::new(
                            false,
                            format!("({p},{q}): Serre pairing fails at shift {r}"),
                        );
                    }
                    pairs += 1;
                }
            }
        }
    }
    parts.push(format!("Serre pairing on {pairs} (X, Y, r)"));

    // ω-iterate spans
    for (p, q) in GRID.into_iter().filter(|&(_, q)| q >= 1) {
        let it = omega_iterate(&ProjComplex::regular(lambda(p, q)), 4).unwrap();
        let spans: Vec<usize> = it.iter().map(|x| x.span()).collect();
        if spans != [2, 3, 4, 5] {
            return Outcome::new(false, format!("({p},{q}): spans of ω^t(Λ) are {spans:?}"));
        }
    }
    parts.push("span(ω^t Λ) = t + 1 for t ≤ 4 (q = 0 not applicable)".to_string());

    // reduction
    let (mut cases, mut early) = (0, 0);
    for (p, q) in GRID {
        let ts: Vec<ProjComplex> = walks
            .get(p, q)
            .iter()
            .filter(|w| w.depth <= 4 && w.node.flags.tilting)
            .map(|w| w.node.complex())
            .collect();
        for t in ts {
            let mut chain = vec![minimize(&t)];
            for _ in 0..2 {
                let next = nu(chain.last().unwrap(), NuDirection::Inverse);
                chain.push(next);
            }
            for k in 1..=2usize {
                let j0 = (0..=k).rev().find(|&j| chain[j].span() <= 2).unwrap();
                let r = match reduce_to_two_term(&chain[k], 8) {
                    Ok(r) => r,
                    Err(e) => return Outcome::new(false, format!("({p},{q}) k = {k}: {e}")),
                };
                if r.m != (k - j0) as i64 || classes(&r.complex) != classes(&chain[j0]) {
                    return Outcome::new(
                        false,
                        format!("({p},{q}) k = {k}: m = {}, expected {}", r.m, k - j0),
                    );
                }
                cases += 1;
                early += (j0 > 0) as usize;
            }
        }
    }
    parts.push(format!("reduction of ν^-k T, k ≤ 2, for every tilting T of the depth-4 walks: {cases} cases, {early} stop at an earlier two-term ν^-j T"));
    Outcome::new(true, parts.join("; "))
}

fn c10_comm() -> Outcome {
    let mut pairs = 0;
    for (p, q) in GRID {
        for seed in 0..20 {
            let r = check_comm(&AutoPair::random(p, q, seed), p, q, seed).unwrap();
            if !r.passed() {
                return Outcome::new(false, format!("({p},{q}) seed {seed}: {:?}", r.holds));
            }
            pairs += 1;
        }
        let inner = AutoPair::inner(p, q, &Q::from_int(3));
        if !check_comm(&inner, p, q, 0).unwrap().passed() {
            return Outcome::new(false, format!("({p},{q}): inner pair fails comm"));
        }
        let l = lambda(p, q);
        let cs = c_chain(l, 1);
        for x in [&cs[0], &cs[1], &ProjComplex::direct_sum(&[&cs[1], &cs[2]])] {
            let y = apply_automorphism(x, &inner).unwrap();
            if !iso_in_homotopy(x, &y, 0) {
                return Outcome::new(false, format!("({p},{q}): inner pair moves {x}"));
            }
        }
    }
    Outcome::new(true, format!("{pairs} random pairs commute with ω; the inner pair (3, 1/3) fixes P_1, P_2, C_0⊕C_1 up to iso"))
}

fn main() {
    let only: Option<BTreeSet<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let wanted = |i: usize| only.as_ref().is_none_or(|s| s.contains(&i));
    let mut walks = Walks::default();
    let mut nodes = BTreeMap::new();
    let mut unexpected = Vec::new();
    let names = [
        "Euler form",
        "tower identities",
        "tilting chain",
        "endomorphism presentation",
        "mutation coherence",
        "classification",
        "negative space",
        "exceptional complexes",
        "Serre/Ringel coherence",
        "automorphisms and ω",
    ];
    for i in 1..=10 {
        // 4 reuses the nodes built by 3
        if !wanted(i) && !(i == 3 && wanted(4)) {
            continue;
        }
        let start = Instant::now();
        let o = match i {
            1 => c1_euler(),
            2 => c2_tower(),
            3 => c3_tilting_chain(&mut nodes),
            4 => c4_presentation(&nodes),
            5 => c5_mutation(&mut walks),
            6 => c6_classification(&mut walks),
            7 => c7_negative(),
            8 => c8_exceptional(),
            9 => c9_serre_ringel(&mut walks),
            _ => c10_comm(),
        };
        if !wanted(i) {
            continue;
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && EXPECTED_FAILURES.contains(&i) {
            " (expected)"
        } else {
            ""
        };
        println!(
            "criterion {i:>2} {status}{note} [{}] {:.1}s: {}",
            names[i - 1],
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.pass && !EXPECTED_FAILURES.contains(&i) {
            unexpected.push(i);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
