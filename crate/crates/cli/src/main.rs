//! Command-line front end for the exact McKay-correspondence pipeline.
//!
//! Every subcommand is deterministic: identical invocations produce
//! byte-identical output. Group specifications are `cyclic:n` (order
//! 2n), `dihedral:n` (order 4n), `tetra`, `octa`, `icosa`; heights are
//! `std` or comma-separated `vertex=value` assignments.

use clap::{Parser, Subcommand, ValueEnum};

use mckay_core::ar_quiver::{
    hom_table, rphi_basis_images, rphi_det, window_dot, ARVertex, HomEngine,
};
use mckay_core::cyclo::Cyclo;
use mckay_core::group::DEFAULT_MAX_ORDER;
use mckay_core::orientation::{connect_heights, standard_height, HeightFunction};
use mckay_core::quiver_rep::phi_object;
use mckay_core::root_lattice::{enumerate_roots, BilinearForm};
use mckay_core::{verify, Context, Error};

#[derive(Parser)]
#[command(name = "mckay", version, about = "Exact McKay-correspondence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, conjugacy classes and the exact character table.
    Group {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// McKay graph, affine type and the imaginary root.
    Mckay {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Real and imaginary roots inside a coordinate box.
    Roots {
        spec: String,
        /// Largest multiple of delta to report.
        #[arg(long, default_value_t = 1)]
        level: i64,
        /// Bound on every coordinate.
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Elementary reversal sequence connecting two height functions.
    Heights {
        spec: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// A window of the Auslander-Reiten quiver.
    Arquiver {
        spec: String,
        /// Window bounds: lowest and highest level.
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        window: Vec<i64>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Hom/Ext dimension tables over a window.
    Homdims {
        spec: String,
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        window: Vec<i64>,
    },
    /// Basis-image matrix of the lattice map for a height function.
    Rphi {
        spec: String,
        #[arg(long, default_value = "std")]
        height: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The hom-functor representation of one AR vertex.
    Phi {
        spec: String,
        #[arg(long, default_value = "std")]
        height: String,
        /// Vertex as `i,n`.
        #[arg(long)]
        object: String,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        spec: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(1);
        }
    }
}

fn max_order() -> usize {
    std::env::var("MCKAY_LAB_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn build(spec: &str) -> Result<Context, Error> {
    Context::build_with_max_order(spec, max_order())
}

fn parse_height(ctx: &Context, s: &str) -> Result<HeightFunction, Error> {
    if s == "std" {
        return Ok(standard_height(&ctx.graph));
    }
    let mut values = vec![i64::MAX; ctx.graph.n_vertices];
    for part in s.split(',') {
        let (v, h) = part
            .split_once('=')
            .ok_or_else(|| Error::BadHeight(format!("expected vertex=value, got `{}`", part)))?;
        let v = v.trim().trim_start_matches('i');
        let idx: usize = v
            .parse()
            .map_err(|_| Error::BadHeight(format!("bad vertex `{}`", v)))?;
        let val: i64 = h
            .trim()
            .parse()
            .map_err(|_| Error::BadHeight(format!("bad value `{}`", h)))?;
        if idx >= values.len() {
            return Err(Error::BadHeight(format!("vertex {} out of range", idx)));
        }
        values[idx] = val;
    }
    if values.contains(&i64::MAX) {
        return Err(Error::BadHeight("every vertex needs a value".into()));
    }
    HeightFunction::new(&ctx.graph, values)
}

fn cyclo_json(c: &Cyclo) -> serde_json::Value {
    serde_json::json!({
        "conductor": c.conductor(),
        "terms": c
            .terms()
            .iter()
            .map(|(k, r)| serde_json::json!([k, format!("{}/{}", r.numer(), r.denom())]))
            .collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Group { spec, format } => {
            let ctx = build(&spec)?;
            let t = &ctx.table;
            if format == Format::Json {
                let chars: Vec<serde_json::Value> = (0..t.num_chars())
                    .map(|i| {
                        serde_json::json!({
                            "dim": t.dims[i],
                            "parity": t.parities[i],
                            "values": t.values[i].iter().map(cyclo_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let js = serde_json::json!({
                    "schema": 1,
                    "spec": spec,
                    "order": ctx.group.order,
                    "gbar_order": ctx.group.g_bar_order(),
                    "conductor": ctx.group.conductor,
                    "class_sizes": t.class_sizes,
                    "class_rep_orders": t.rep_orders,
                    "characters": chars,
                });
                println!("{}", serde_json::to_string_pretty(&js).unwrap());
            } else {
                println!(
                    "group {}: order {}, {} classes, conductor {}",
                    spec,
                    ctx.group.order,
                    t.num_classes(),
                    ctx.group.conductor
                );
                println!("class sizes: {:?}", t.class_sizes);
                println!("class representative orders: {:?}", t.rep_orders);
                for i in 0..t.num_chars() {
                    let vals: Vec<String> = t.values[i].iter().map(|v| v.to_string()).collect();
                    println!(
                        "chi_{} (dim {}, parity {}): [{}]",
                        i,
                        t.dims[i],
                        t.parities[i],
                        vals.join(", ")
                    );
                }
            }
            Ok(0)
        }
        Command::Mckay { spec, format } => {
            let ctx = build(&spec)?;
            let g = &ctx.graph;
            match format {
                Format::Dot => print!("{}", g.to_dot()),
                Format::Json => {
                    let js = serde_json::json!({
                        "schema": 1,
                        "spec": spec,
                        "affine_type": g.affine_type.to_string(),
                        "vertices": g.n_vertices,
                        "dims": g.dims,
                        "parities": g.parities,
                        "edges": g.edges,
                        "delta": g.delta.coords,
                        "canonical_order": g.canonical_order,
                    });
                    println!("{}", serde_json::to_string_pretty(&js).unwrap());
                }
                Format::Text => {
                    println!("McKay graph of {}: type {}", spec, g.affine_type);
                    println!("delta = {:?}", g.delta.coords);
                    for i in 0..g.n_vertices {
                        let nb: Vec<String> = g
                            .neighbors(i)
                            .map(|(j, m)| {
                                if m == 1 {
                                    j.to_string()
                                } else {
                                    format!("{}x{}", j, m)
                                }
                            })
                            .collect();
                        println!(
                            "vertex {} (d={}, p={}): neighbors [{}]",
                            i,
                            g.dims[i],
                            g.parities[i],
                            nb.join(", ")
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Roots {
            spec,
            level,
            bound,
            format,
        } => {
            let ctx = build(&spec)?;
            let form = BilinearForm::from_graph(&ctx.graph);
            let roots = enumerate_roots(&ctx.graph, &form, level, bound)?;
            if format == Format::Json {
                let js = serde_json::json!({
                    "schema": 1,
                    "spec": spec,
                    "level": level,
                    "bound": bound,
                    "roots": roots.iter().map(|r| serde_json::json!({
                        "coords": r.vector.coords,
                        "kind": if r.imaginary { "imaginary" } else { "real" },
                        "delta_level": r.delta_level,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&js).unwrap());
            } else {
                for r in &roots {
                    println!(
                        "{} {:?} (level {})",
                        if r.imaginary { "imaginary" } else { "real" },
                        r.vector.coords,
                        r.delta_level
                    );
                }
                println!("{} roots", roots.len());
            }
            Ok(0)
        }
        Command::Heights {
            spec,
            from,
            to,
            format,
        } => {
            let ctx = build(&spec)?;
            let a = parse_height(&ctx, &from)?;
            let b = parse_height(&ctx, &to)?;
            let steps = connect_heights(&ctx.graph, &a, &b)?;
            if format == Format::Json {
                let js = serde_json::json!({
                    "schema": 1,
                    "from": a.values,
                    "to": b.values,
                    "steps": steps.iter().map(|(i, d)| serde_json::json!([i, d.to_string()])).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&js).unwrap());
            } else {
                for (i, d) in &steps {
                    println!("s_{}^{}", i, d);
                }
                println!("{} reversals", steps.len());
            }
            Ok(0)
        }
        Command::Arquiver {
            spec,
            window,
            format,
        } => {
            let ctx = build(&spec)?;
            let (lo, hi) = (window[0], window[1]);
            match format {
                Format::Json => {
                    let engine = HomEngine::new(&ctx.table, &ctx.graph);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&hom_table(&engine, lo, hi)?.to_json())
                            .unwrap()
                    );
                }
                _ => print!("{}", window_dot(&ctx.graph, lo, hi)),
            }
            Ok(0)
        }
        Command::Homdims { spec, window } => {
            let ctx = build(&spec)?;
            let engine = HomEngine::new(&ctx.table, &ctx.graph);
            let table = hom_table(&engine, window[0], window[1])?;
            println!(
                "{}",
                serde_json::to_string_pretty(&table.to_json()).unwrap()
            );
            Ok(0)
        }
        Command::Rphi {
            spec,
            height,
            format,
        } => {
            let ctx = build(&spec)?;
            let h = parse_height(&ctx, &height)?;
            let engine = HomEngine::new(&ctx.table, &ctx.graph);
            let images = rphi_basis_images(&engine, &h)?;
            let det = rphi_det(&engine, &h)?;
            if format == Format::Json {
                let js = serde_json::json!({
                    "schema": 1,
                    "heights": h.values,
                    "images": images.iter().map(|v| v.coords.clone()).collect::<Vec<_>>(),
                    "det": det,
                });
                println!("{}", serde_json::to_string_pretty(&js).unwrap());
            } else {
                for (v, img) in images.iter().enumerate() {
                    println!("[X_({}, {})] -> {:?}", v, h.values[v], img.coords);
                }
                println!("det = {}", det);
            }
            Ok(0)
        }
        Command::Phi {
            spec,
            height,
            object,
        } => {
            let ctx = build(&spec)?;
            let h = parse_height(&ctx, &height)?;
            let (v, n) = object
                .split_once(',')
                .ok_or_else(|| Error::BadArgument(format!("expected i,n got `{}`", object)))?;
            let vertex: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::BadArgument(format!("bad vertex `{}`", v)))?;
            let level: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::BadArgument(format!("bad level `{}`", n)))?;
            let engine = HomEngine::new(&ctx.table, &ctx.graph);
            let q = ARVertex::new(&ctx.graph, vertex, level)?;
            let rep = phi_object(&engine, &h, q)?;
            println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
            Ok(0)
        }
        Command::Verify {
            spec,
            suite,
            format,
        } => {
            let ctx = build(&spec)?;
            let checks = verify::run_suite(&ctx, &suite)?;
            let all_pass = checks.iter().all(|c| c.pass);
            if format == Format::Json {
                let js = serde_json::json!({
                    "schema": 1,
                    "spec": spec,
                    "suite": suite,
                    "pass": all_pass,
                    "checks": checks.iter().map(|c| serde_json::json!({
                        "name": c.name,
                        "pass": c.pass,
                        "detail": c.detail,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&js).unwrap());
            } else {
                for c in &checks {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        println!("[{}] {}", status, c.name);
                    } else {
                        println!("[{}] {} ({})", status, c.name, c.detail);
                    }
                }
                println!(
                    "{}: {} checks, {}",
                    spec,
                    checks.len(),
                    if all_pass { "all passed" } else { "FAILURES" }
                );
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
