//! Machine verification suites for every identity the pipeline relies
//! on. Each suite returns one [`Check`] per verified statement; the CLI
//! and the acceptance tests print one line per check.
//!
//! Randomized sweeps (height walks, random pairs) use a fixed-seed
//! generator so that every run is byte-identical.

use num_traits::{One, Zero};

use crate::ar_quiver::{
    ar_sequence, delta_classes, euler_pair, k_normalize, polarize, rank_degree, rphi,
    rphi_basis_images, rphi_det, rphi_inverse, sym_pair, twist, verify_cg, window_vertices,
    ARVertex, HomEngine, KClass, MeshModule, Polarization,
};
use crate::error::{Error, Result};
use crate::group::Family;
use crate::mckay::AffineType;
use crate::orientation::{
    connect_heights, coxeter_word, reverse_at, standard_height, Dir, HeightFunction,
};
use crate::quiver_rep::{is_indecomposable, phi_object, realize_root, reflect_minus, reflect_plus};
use crate::root_lattice::{enumerate_roots, AnModel, BilinearForm, ModelVector, RootVector};
use crate::{Check, Context, Rat};

/// SplitMix64: deterministic, seedable, good enough to shuffle walks.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn seed_for(ctx: &Context, salt: u64) -> u64 {
    let mut h = 0xCBF29CE484222325u64;
    for b in ctx.group.spec.to_string().bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001B3);
    }
    h ^ salt
}

/// Random reversal walk from a height function; every step is a legal
/// elementary reversal, so the result is always valid.
pub fn random_height(
    ctx: &Context,
    start: &HeightFunction,
    steps: usize,
    rng: &mut SplitMix64,
) -> Result<HeightFunction> {
    let graph = &ctx.graph;
    let mut h = start.clone();
    for _ in 0..steps {
        let mut moves = Vec::new();
        for i in 0..graph.n_vertices {
            if h.is_sink(graph, i) {
                moves.push((i, Dir::Plus));
            }
            if h.is_source(graph, i) {
                moves.push((i, Dir::Minus));
            }
        }
        let (i, dir) = moves[rng.below(moves.len())];
        h = reverse_at(graph, &h, i, dir)?;
    }
    Ok(h)
}

/// Character engine: exact orthogonality, degree identity, parities,
/// symmetric power dimensions and tensor symmetry.
pub fn suite_characters(ctx: &Context) -> Result<Vec<Check>> {
    let t = &ctx.table;
    let mut checks = Vec::new();
    let r = t.num_chars();

    let sq: usize = t.dims.iter().map(|d| d * d).sum();
    checks.push(check_eq("sum of squared degrees = |G|", sq, t.group_order));

    let mut rows_ok = true;
    for i in 0..r {
        for j in 0..r {
            let ip = t.inner(&t.values[i], &t.values[j])?;
            let expect = Rat::from_integer(i64::from(i == j).into());
            if ip.as_rational() != Some(expect) {
                rows_ok = false;
            }
        }
    }
    checks.push(check_bool("row orthogonality exact", rows_ok));

    let mut cols_ok = true;
    for k in 0..r {
        for l in 0..r {
            let mut acc = crate::cyclo::Cyclo::zero();
            for s in 0..r {
                acc = acc.add(&t.values[s][k].conj().mul(&t.values[s][l])?)?;
            }
            let expect = if k == l {
                Rat::new(
                    (t.group_order as i64).into(),
                    (t.class_sizes[k] as i64).into(),
                )
            } else {
                Rat::zero()
            };
            if acc.as_rational() != Some(expect) {
                cols_ok = false;
            }
        }
    }
    checks.push(check_bool("column orthogonality exact", cols_ok));

    let mut dim_ok = true;
    for k in 0..=20usize {
        let vk = t.sym_power_character(k)?;
        if vk[0].as_rational() != Some(Rat::from_integer((k as i64 + 1).into())) {
            dim_ok = false;
        }
    }
    checks.push(check_bool(
        "sym power dimension chi_{V_k}(1) = k+1, k <= 20",
        dim_ok,
    ));

    let mut sym_ok = true;
    for i in 0..r {
        for j in 0..r {
            let vi = t.pointwise(&t.chi_v, &t.values[i])?;
            let vj = t.pointwise(&t.chi_v, &t.values[j])?;
            if t.mult(i, &vj)? != t.mult(j, &vi)? {
                sym_ok = false;
            }
        }
    }
    checks.push(check_bool(
        "tensor multiplicities symmetric (undirected graph)",
        sym_ok,
    ));

    checks.push(check_bool(
        "tautological character has parity 1",
        t.chi_v[t.minus_one_class].as_rational() == Some(Rat::from_integer((-2).into())),
    ));
    Ok(checks)
}

/// McKay graph: affine type per family, delta = irreducible dimensions,
/// bipartite radical structure.
pub fn suite_mckay(ctx: &Context) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    let spec = ctx.group.spec;
    let mut checks = Vec::new();

    let expected = match (spec.family, spec.param) {
        (Family::BinaryCyclic, n) => AffineType::A(2 * n - 1),
        // dihedral:1 degenerates to the cyclic group of order 4.
        (Family::BinaryDihedral, 1) => AffineType::A(3),
        (Family::BinaryDihedral, n) => AffineType::D(n + 2),
        (Family::BinaryTetrahedral, _) => AffineType::E(6),
        (Family::BinaryOctahedral, _) => AffineType::E(7),
        (Family::BinaryIcosahedral, _) => AffineType::E(8),
    };
    checks.push(Check {
        name: format!("affine type is {}", expected),
        pass: graph.affine_type == expected,
        detail: format!("classified {}", graph.affine_type),
    });

    let dims: Vec<i64> = graph.dims.iter().map(|&d| d as i64).collect();
    checks.push(check_bool(
        "delta coordinates equal irreducible dimensions",
        graph.delta.coords == dims,
    ));

    let mut bipartite = true;
    for i in 0..graph.n_vertices {
        for (j, _) in graph.neighbors(i) {
            if graph.parities[i] == graph.parities[j] {
                bipartite = false;
            }
        }
    }
    checks.push(check_bool(
        "every edge joins the two parity classes",
        bipartite,
    ));

    let form = BilinearForm::from_graph(graph);
    let mut radical = true;
    for i in 0..graph.n_vertices {
        if form.eval(&graph.delta, &RootVector::simple(graph.n_vertices, i)) != 0 {
            radical = false;
        }
    }
    checks.push(check_bool("delta spans the radical of the form", radical));
    Ok(checks)
}

/// Mesh engine against the character engine over height-6 windows, plus
/// the object-level hom functor on a height-4 band.
pub fn suite_mesh(ctx: &Context) -> Result<Vec<Check>> {
    let engine = HomEngine::new(&ctx.table, &ctx.graph);
    let graph = &ctx.graph;
    let mut checks = Vec::new();

    let mut agree = true;
    let mut pairs = 0usize;
    for target in window_vertices(graph, 0, 6) {
        let module = MeshModule::build(graph, 0, 6, target)?;
        for source in window_vertices(graph, 0, 6) {
            pairs += 1;
            if module.dim(source)? != engine.hom_dim(source, target)? {
                agree = false;
            }
        }
    }
    checks.push(Check {
        name: "mesh quotient dimension = hom dimension (height-6 window)".into(),
        pass: agree,
        detail: format!("{} ordered pairs", pairs),
    });

    // AR mesh recursion inside the window.
    let mut recursion = true;
    for q in window_vertices(graph, 0, 3) {
        for v in window_vertices(graph, q.level, 4) {
            let mut rhs = -(engine.hom_dim(q, v)? as i64);
            for (j, m) in graph.neighbors(v.vertex) {
                rhs += m as i64
                    * engine.hom_dim(
                        q,
                        ARVertex {
                            vertex: j,
                            level: v.level + 1,
                        },
                    )? as i64;
            }
            if engine.hom_dim(q, v.shifted(2))? as i64 != rhs {
                recursion = false;
            }
        }
    }
    checks.push(check_bool(
        "AR mesh recursion for hom dimensions",
        recursion,
    ));

    // Duality of the pairing at the dimension level.
    let mut duality = true;
    for v in window_vertices(graph, 0, 1) {
        for (j, _) in graph.neighbors(v.vertex) {
            let up = ARVertex {
                vertex: j,
                level: v.level + 1,
            };
            if engine.hom_dim(v, up)? != engine.hom_dim(up, v.shifted(2))? {
                duality = false;
            }
        }
    }
    checks.push(check_bool(
        "pairing duality hom(q, q') = hom(q', q(2))",
        duality,
    ));

    // Object-level hom functor over the height-4 band above the
    // standard height function.
    let h = standard_height(graph);
    let mut phi_ok = true;
    let mut objects = 0usize;
    for v in 0..graph.n_vertices {
        for k in [0i64, 2, 4] {
            let q = ARVertex {
                vertex: v,
                level: h.values[v] + k,
            };
            let rep = phi_object(&engine, &h, q)?;
            objects += 1;
            // phi_object verifies dim = rphi([X_q]) internally.
            if !is_indecomposable(&rep)? {
                phi_ok = false;
            }
        }
    }
    checks.push(Check {
        name: "hom functor indecomposable with lattice-image dimensions (height-4 band)".into(),
        pass: phi_ok,
        detail: format!("{} objects", objects),
    });

    checks.push(check_bool(
        "window of width 4 is connected",
        crate::ar_quiver::window_connected(graph, 0, 4),
    ));
    Ok(checks)
}

/// Grothendieck-group structure: AR relations die under normalization,
/// the basis-image matrix is unimodular, the standard-height images are
/// the published ones, Serre duality at the dimension and pairing level.
pub fn suite_ktheory(ctx: &Context) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    let engine = HomEngine::new(&ctx.table, &ctx.graph);
    let mut checks = Vec::new();
    let std_h = standard_height(graph);
    let mut rng = SplitMix64::new(seed_for(ctx, 4));
    let mut heights = vec![std_h.clone()];
    for _ in 0..3 {
        heights.push(random_height(ctx, &std_h, 2 * graph.n_vertices, &mut rng)?);
    }

    for (idx, h) in heights.iter().enumerate() {
        let mut killed = true;
        for v in window_vertices(graph, -5, 3) {
            let (l, m, r) = ar_sequence(graph, v)?;
            let rel = l.sub(&m).add(&r);
            if k_normalize(graph, h, &rel)?.iter().any(|&c| c != 0) {
                killed = false;
            }
        }
        checks.push(check_bool(
            format!("AR relations normalize to zero (height {})", idx),
            killed,
        ));
        let det = rphi_det(&engine, h)?;
        checks.push(Check {
            name: format!("basis-image matrix unimodular (height {})", idx),
            pass: det.abs() == 1,
            detail: format!("det = {}", det),
        });
    }

    // Standard-height images.
    let n = graph.n_vertices;
    let mut images_ok = true;
    for v in 0..n {
        if graph.parities[v] == 0 {
            let x = KClass::symbol(graph, v, 0)?;
            if rphi(&engine, &std_h, &x)? != RootVector::simple(n, v) {
                images_ok = false;
            }
        } else {
            let x = KClass::symbol(graph, v, 1)?;
            let mut expect = RootVector::simple(n, v);
            for (j, m) in graph.neighbors(v) {
                expect = &expect + &RootVector::simple(n, j).scaled(m as i64);
            }
            if rphi(&engine, &std_h, &x)? != expect {
                images_ok = false;
            }
            let y = KClass::symbol(graph, v, -1)?;
            if rphi(&engine, &std_h, &y)? != RootVector::simple(n, v).scaled(-1) {
                images_ok = false;
            }
        }
    }
    checks.push(check_bool(
        "standard-height basis images match the closed form",
        images_ok,
    ));

    // Serre duality at the dimension level over a height-6 window.
    let mut serre = true;
    let vs = window_vertices(graph, -3, 3);
    for &q in &vs {
        for &qp in &vs {
            if engine.ext_dim(q, qp)? != engine.hom_dim(qp.shifted(2), q)? {
                serre = false;
            }
        }
    }
    checks.push(check_bool(
        "ext(F, G(-2)) = hom(G, F) dimensions (height-6 window)",
        serre,
    ));

    // <x, y> = -<y, C x> on all basis pairs.
    let basis: Vec<KClass> = (0..n)
        .map(|v| KClass::symbol(graph, v, std_h.values[v]))
        .collect::<Result<_>>()?;
    let mut antisym = true;
    for x in &basis {
        for y in &basis {
            if euler_pair(&engine, x, y)? != -euler_pair(&engine, y, &twist(x, -2)?)? {
                antisym = false;
            }
        }
    }
    checks.push(check_bool(
        "Euler pairing satisfies <x,y> = -<y,Cx>",
        antisym,
    ));

    // Symmetrized pairing matches the lattice form through the lattice map.
    let form = BilinearForm::from_graph(graph);
    let mut pair_ok = true;
    for x in &basis {
        for y in &basis {
            let lhs = sym_pair(&engine, x, y)?;
            let rhs = form.eval(&rphi(&engine, &std_h, x)?, &rphi(&engine, &std_h, y)?);
            if lhs != rhs {
                pair_ok = false;
            }
        }
    }
    checks.push(check_bool("symmetrized Euler form = lattice form", pair_ok));

    // Rank/degree: deg delta = |G|/2, rank functional via the pairing
    // (twice the rank), both functionals kill AR relations.
    let (d0, _d1, delta) = delta_classes(graph);
    let (rk_d, deg_d) = rank_degree(graph, &delta);
    checks.push(check_eq("rank of delta is 0", rk_d, 0));
    checks.push(check_eq(
        "degree of delta = |G|/2",
        deg_d,
        ctx.group.order as i64 / 2,
    ));
    let mut rank_pairing = true;
    for x in &basis {
        let (rk, _) = rank_degree(graph, x);
        if sym_pair(&engine, x, &d0)? != 2 * rk {
            rank_pairing = false;
        }
    }
    checks.push(check_bool(
        "pairing against delta_0 is twice the rank",
        rank_pairing,
    ));
    let mut functional = true;
    for v in window_vertices(graph, -4, 4) {
        let (l, m, r) = ar_sequence(graph, v)?;
        let rel = l.sub(&m).add(&r);
        let (rk, deg) = rank_degree(graph, &rel);
        if rk != 0 || deg != 0 {
            functional = false;
        }
    }
    checks.push(check_bool(
        "rank and degree vanish on AR relations",
        functional,
    ));

    // Polarization of the obvious classes.
    let mut polar = true;
    for v in window_vertices(graph, -2, 2) {
        let x = KClass::symbol(graph, v.vertex, v.level)?;
        if polarize(graph, &x)? != Polarization::PositiveFree {
            polar = false;
        }
        if polarize(graph, &x.scaled(-1))? != Polarization::NegativeFree {
            polar = false;
        }
    }
    if polarize(graph, &delta)? != Polarization::PositiveTorsion {
        polar = false;
    }
    checks.push(check_bool(
        "polarization sorts sheaf classes and delta",
        polar,
    ));
    Ok(checks)
}

/// Reflection intertwining, the Coxeter square, and height connectivity.
pub fn suite_coxeter(ctx: &Context) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    let engine = HomEngine::new(&ctx.table, &ctx.graph);
    let form = BilinearForm::from_graph(graph);
    let std_h = standard_height(graph);
    let mut checks = Vec::new();

    // Intertwining over 20 random heights.
    let mut rng = SplitMix64::new(seed_for(ctx, 6));
    let mut intertwine = true;
    let mut cases = 0usize;
    for _ in 0..20 {
        let h = random_height(ctx, &std_h, rng.below(3 * graph.n_vertices), &mut rng)?;
        let images = rphi_basis_images(&engine, &h)?;
        for i in 0..graph.n_vertices {
            let moves: &[(Dir, bool)] = &[
                (Dir::Plus, h.is_sink(graph, i)),
                (Dir::Minus, h.is_source(graph, i)),
            ];
            for &(dir, ok) in moves {
                if !ok {
                    continue;
                }
                let h2 = reverse_at(graph, &h, i, dir)?;
                for v in 0..graph.n_vertices {
                    cases += 1;
                    let x = KClass::symbol(graph, v, h.values[v])?;
                    let lhs = rphi(&engine, &h2, &x)?;
                    let rhs = form.reflect(i, &images[v]);
                    if lhs != rhs {
                        intertwine = false;
                    }
                }
            }
        }
    }
    checks.push(Check {
        name: "lattice map intertwines reversals with reflections".into(),
        pass: intertwine,
        detail: format!("{} cases over 20 random heights", cases),
    });

    // Coxeter square for the standard height and 3 random ones.
    let mut rng = SplitMix64::new(seed_for(ctx, 7));
    let mut heights = vec![std_h.clone()];
    for _ in 0..3 {
        heights.push(random_height(ctx, &std_h, 2 * graph.n_vertices, &mut rng)?);
    }
    let mut square = true;
    for h in &heights {
        let word = coxeter_word(graph, h, Dir::Plus)?;
        for v in 0..graph.n_vertices {
            let x = KClass::symbol(graph, v, h.values[v])?;
            let lhs = rphi(&engine, h, &twist(&x, -2)?)?;
            let rhs = form.apply_word(&word, &rphi(&engine, h, &x)?);
            if lhs != rhs {
                square = false;
            }
        }
    }
    checks.push(check_bool(
        "Coxeter square: twist by -2 matches the Coxeter word",
        square,
    ));

    // Minus word inverts the plus word on the lattice.
    let mut inverse_ok = true;
    for h in &heights {
        let plus = coxeter_word(graph, h, Dir::Plus)?;
        let minus = coxeter_word(graph, h, Dir::Minus)?;
        for v in 0..graph.n_vertices {
            let x = RootVector::simple(graph.n_vertices, v);
            let round = form.apply_word(&minus, &form.apply_word(&plus, &x));
            if round != x {
                inverse_ok = false;
            }
        }
    }
    checks.push(check_bool(
        "minus Coxeter word inverts the plus word",
        inverse_ok,
    ));

    // Height connectivity: 100 random pairs with exact step counts.
    let mut rng = SplitMix64::new(seed_for(ctx, 13));
    let mut connect_ok = true;
    for _ in 0..100 {
        let a = random_height(ctx, &std_h, rng.below(2 * graph.n_vertices + 1), &mut rng)?;
        let b = random_height(ctx, &std_h, rng.below(2 * graph.n_vertices + 1), &mut rng)?;
        let steps = connect_heights(graph, &a, &b)?;
        if steps.len() as i64 != a.distance(&b) / 2 {
            connect_ok = false;
        }
        let mut cur = a.clone();
        for (i, dir) in steps {
            cur = reverse_at(graph, &cur, i, dir)?;
        }
        if cur != b {
            connect_ok = false;
        }
    }
    checks.push(check_bool(
        "height connectivity: 100 random pairs at d/2 steps",
        connect_ok,
    ));
    Ok(checks)
}

/// The Coxeter power theorem C^g(x) = x - 2 rk(x) delta, plus rank-zero
/// fixed points.
pub fn suite_cg(ctx: &Context) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    let engine = HomEngine::new(&ctx.table, &ctx.graph);
    let h = standard_height(graph);
    let mut checks = verify_cg(&engine, &h, 3)?;

    // Rank-zero representatives: delta and any real roots orthogonal to
    // the rank functional; C^g fixes them.
    let g = ctx.group.order as i64 / 2;
    let form = BilinearForm::from_graph(graph);
    let (d0, _, _) = delta_classes(graph);
    let rk_vector = rphi(&engine, &h, &d0)?;
    let mut fixed = true;
    let mut found = 0;
    for root in enumerate_roots(graph, &form, 1, 3)? {
        if root.imaginary {
            continue;
        }
        // The symmetrized pairing against the image of delta_0 detects
        // rank zero.
        if form.eval(&root.vector, &rk_vector) != 0 {
            continue;
        }
        found += 1;
        let x = rphi_inverse(&engine, &h, &root.vector)?;
        let (rk, _) = rank_degree(graph, &x);
        if rk != 0 {
            fixed = false;
        }
        if k_normalize(graph, &h, &twist(&x, -2 * g)?)? != k_normalize(graph, &h, &x)? {
            fixed = false;
        }
        if found >= 12 {
            break;
        }
    }
    checks.push(Check {
        name: "C^g fixes rank-zero root classes".into(),
        pass: fixed,
        detail: format!("{} rank-zero representatives", found),
    });
    Ok(checks)
}

/// The closed-form cycle model: simple roots, reflections, Coxeter
/// action, half-turn translation, and the parity classification.
pub fn suite_an(ctx: &Context) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    if ctx.group.spec.family != Family::BinaryCyclic {
        return Ok(vec![Check::pass(
            "cycle model",
            "skipped: only defined for the cyclic family",
        )]);
    }
    let engine = HomEngine::new(&ctx.table, &ctx.graph);
    let model = AnModel::new(graph)?;
    let n = model.n;
    let form = BilinearForm::from_graph(graph);
    let h = standard_height(graph);
    let mut checks = Vec::new();

    // Simple roots: form agreement and sum = delta.
    let mut simple_ok = true;
    for s in 0..n {
        for t in 0..n {
            let lhs = model.simple_images[s].pair(&model.simple_images[t]);
            let rhs = form.eval(
                &RootVector::simple(n, model.cycle[s]),
                &RootVector::simple(n, model.cycle[t]),
            );
            if lhs != Rat::from_integer(rhs.into()) {
                simple_ok = false;
            }
        }
    }
    if model.to_model(&graph.delta) != ModelVector::delta(n) {
        simple_ok = false;
    }
    checks.push(check_bool(
        "model simple roots match the form; sum is delta",
        simple_ok,
    ));

    // Reflections: s_t(e_t) = e_{t+1} - delta/n and the square with the
    // abstract side commutes.
    let mut refl_ok = true;
    for t in 0..n {
        let img = model.reflect(t, &ModelVector::basis_e(n, t));
        let mut expect = ModelVector::basis_e(n, (t + 1) % n);
        expect.delta_coeff = -Rat::new(1.into(), (n as i64).into());
        if img != expect {
            refl_ok = false;
        }
        for s in 0..n {
            let alpha = RootVector::simple(n, model.cycle[s]);
            let lhs = model.to_model(&form.reflect(model.cycle[t], &alpha));
            let rhs = model.reflect(t, &model.to_model(&alpha));
            if lhs != rhs {
                refl_ok = false;
            }
        }
    }
    checks.push(check_bool(
        "model reflections match the abstract ones",
        refl_ok,
    ));

    // Coxeter action: on the model space, C(e_t) = e_{t+2} - (2/n) delta
    // for even t and e_{t-2} + (2/n) delta for odd t.
    let word = coxeter_word(graph, &h, Dir::Plus)?;
    let positions: Vec<usize> = word.sequence.iter().map(|&v| model.position[v]).collect();
    let apply_model = |v: &ModelVector| -> ModelVector {
        let mut cur = v.clone();
        for &t in &positions {
            cur = model.reflect(t, &cur);
        }
        cur
    };
    let two_over_n = Rat::new(2.into(), (n as i64).into());
    let mut cox_ok = true;
    for t in 0..n {
        let img = apply_model(&ModelVector::basis_e(n, t));
        let mut expect = if t % 2 == 0 {
            ModelVector::basis_e(n, (t + 2) % n)
        } else {
            ModelVector::basis_e(n, (t + n - 2) % n)
        };
        expect.delta_coeff = if t % 2 == 0 {
            -two_over_n.clone()
        } else {
            two_over_n.clone()
        };
        if img != expect {
            cox_ok = false;
        }
    }
    checks.push(check_bool("Coxeter action on the model basis", cox_ok));

    // Half turn: C^{n/2}(e_t) = e_t -+ delta.
    let mut half_ok = true;
    for t in 0..n {
        let mut cur = ModelVector::basis_e(n, t);
        for _ in 0..n / 2 {
            cur = apply_model(&cur);
        }
        let mut expect = ModelVector::basis_e(n, t);
        expect.delta_coeff = if t % 2 == 0 {
            -Rat::from_integer(1.into())
        } else {
            Rat::from_integer(1.into())
        };
        if cur != expect {
            half_ok = false;
        }
    }
    checks.push(check_bool(
        "half-turn Coxeter power translates by delta",
        half_ok,
    ));

    // Parity classification of roots e_i - e_j + a delta.
    let mut class_ok = true;
    let mut classified = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for m in -1i64..=1 {
                // a = (j - i)/n + m.
                let a = Rat::new((j as i64 - i as i64).into(), (n as i64).into())
                    + Rat::from_integer(m.into());
                let mut v = ModelVector::zero(n);
                v.e_coeffs[i] = Rat::one();
                v.e_coeffs[j] = -Rat::one();
                v.delta_coeff = a;
                let abstract_root = model.from_model(&v)?;
                let x = rphi_inverse(&engine, &h, &abstract_root)?;
                let (rk, _) = rank_degree(graph, &x);
                let expected_sign = match (i % 2, j % 2) {
                    (0, 1) => 1,
                    (1, 0) => -1,
                    _ => 0,
                };
                if rk.signum() != expected_sign {
                    class_ok = false;
                }
                classified += 1;
            }
        }
    }
    checks.push(Check {
        name: "parity classification of model roots by rank".into(),
        pass: class_ok,
        detail: format!("{} roots", classified),
    });
    Ok(checks)
}

/// Reflection functors over every realizable positive real root up to a
/// delta level: dimension identities at every sink and the
/// round-trip-with-indecomposability certificate.
pub fn suite_bgp(ctx: &Context, level_bound: i64) -> Result<Vec<Check>> {
    let graph = &ctx.graph;
    let form = BilinearForm::from_graph(graph);
    let h = standard_height(graph);
    let max_delta = *graph.delta.coords.iter().max().unwrap();
    let box_bound = level_bound * max_delta + 3;
    let roots = enumerate_roots(graph, &form, 0, box_bound)?;

    let mut total = 0usize;
    let mut realized = 0usize;
    let mut stuck = 0usize;
    let mut ok = true;
    let mut detail = String::new();
    for root in roots.iter().filter(|r| !r.imaginary) {
        let beta = &root.vector;
        if beta.coords.iter().any(|&c| c < 0) || root.delta_level.abs() > level_bound {
            continue;
        }
        total += 1;
        let m = match realize_root(graph, &h, beta) {
            Ok(m) => m,
            Err(Error::WordSearchBound(_)) => {
                // Unreachable classes are regular: their rank functional
                // vanishes.
                let rk: i64 = (0..graph.n_vertices)
                    .map(|i| {
                        let sign = if graph.parities[i] == 0 { 1 } else { -1 };
                        sign * graph.dims[i] as i64 * beta.coords[i]
                    })
                    .sum();
                if rk != 0 {
                    ok = false;
                    detail = format!("search failed on non-regular root {:?}", beta.coords);
                }
                stuck += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        realized += 1;
        if m.dim_vector() != *beta || !is_indecomposable(&m)? {
            ok = false;
            detail = format!("bad realization at {:?}", beta.coords);
            continue;
        }
        let is_simple = m.dims.iter().sum::<usize>() == 1;
        let mut rounded = false;
        for i in 0..graph.n_vertices {
            if !m.quiver.height.is_sink(graph, i) {
                continue;
            }
            if is_simple && m.dims[i] == 1 {
                // The excluded summand case: the functor kills the
                // simple at its own sink.
                let killed = reflect_plus(graph, &m, i)?;
                if !killed.is_zero() {
                    ok = false;
                    detail = format!("simple not killed at {:?}", beta.coords);
                }
                continue;
            }
            let plus = reflect_plus(graph, &m, i)?;
            if plus.dim_vector() != form.reflect(i, beta) {
                ok = false;
                detail = format!("dimension identity fails at {:?} sink {}", beta.coords, i);
            }
            if !rounded && !plus.is_zero() {
                // Round trip with the indecomposability certificate,
                // once per root.
                rounded = true;
                let back = reflect_minus(graph, &plus, i)?;
                if back.dim_vector() != *beta || !is_indecomposable(&back)? {
                    ok = false;
                    detail = format!("round trip fails at {:?} sink {}", beta.coords, i);
                }
            }
        }
    }
    Ok(vec![Check {
        name: format!(
            "reflection functors over real roots (level <= {})",
            level_bound
        ),
        pass: ok && realized > 0,
        detail: if detail.is_empty() {
            format!(
                "{} roots: {} realized, {} regular unreachable",
                total, realized, stuck
            )
        } else {
            detail
        },
    }])
}

/// End-to-end dispatch for the CLI `verify` subcommand; `all` runs every
/// suite (reflection functors capped at level 0 for the largest group).
pub fn run_suite(ctx: &Context, suite: &str) -> Result<Vec<Check>> {
    let bgp_level = match ctx.group.spec.family {
        Family::BinaryIcosahedral => 0,
        _ => 2,
    };
    match suite {
        "characters" => suite_characters(ctx),
        "mckay" => suite_mckay(ctx),
        "mesh" => suite_mesh(ctx),
        "ktheory" => suite_ktheory(ctx),
        "coxeter" => suite_coxeter(ctx),
        "cg" => suite_cg(ctx),
        "an" => suite_an(ctx),
        "bgp" => suite_bgp(ctx, bgp_level),
        "all" => {
            let mut checks = Vec::new();
            checks.extend(suite_characters(ctx)?);
            checks.extend(suite_mckay(ctx)?);
            checks.extend(suite_mesh(ctx)?);
            checks.extend(suite_ktheory(ctx)?);
            checks.extend(suite_coxeter(ctx)?);
            checks.extend(suite_cg(ctx)?);
            checks.extend(suite_an(ctx)?);
            checks.extend(suite_bgp(ctx, bgp_level)?);
            Ok(checks)
        }
        _ => Err(Error::VerificationFailed(format!(
            "unknown suite `{}`",
            suite
        ))),
    }
}

fn check_bool(name: impl Into<String>, pass: bool) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: String::new(),
    }
}

fn check_eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, got: T, expect: T) -> Check {
    Check {
        name: name.into(),
        pass: got == expect,
        detail: format!("got {:?}, expected {:?}", got, expect),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_heights_are_valid() {
        let ctx = Context::build("dihedral:3").unwrap();
        let std_h = standard_height(&ctx.graph);
        let mut rng = SplitMix64::new(7);
        for _ in 0..10 {
            let h = random_height(&ctx, &std_h, 15, &mut rng).unwrap();
            h.validate(&ctx.graph).unwrap();
        }
    }

    #[test]
    fn an_suite_skips_non_cyclic() {
        let ctx = Context::build("tetra").unwrap();
        let checks = suite_an(&ctx).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(checks[0].pass);
        assert!(checks[0].detail.contains("skipped"));
    }

    #[test]
    fn unknown_suite_errors() {
        let ctx = Context::build("cyclic:1").unwrap();
        assert!(matches!(
            run_suite(&ctx, "bogus"),
            Err(Error::VerificationFailed(_))
        ));
    }

    #[test]
    fn small_group_all_suites_pass() {
        let ctx = Context::build("cyclic:1").unwrap();
        let checks = run_suite(&ctx, "all").unwrap();
        for c in &checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
