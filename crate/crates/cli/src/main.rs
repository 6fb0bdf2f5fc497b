use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use superlambda::bridge::{self, all_shapes, lattice_sweep};
use superlambda::cc::{self, SweepReport};
use superlambda::io::{self, TriangulationFile};
use superlambda::polygon::{all_triangulations, OrientedTriangulation, Triangulation};
use superlambda::repr::{module_of_arc, submodule_lattice, submodules, Quiver};
use superlambda::snake::{build_snake, classical_expansion, super_lambda_dimer, SnakeGraph};
use superlambda::{Error, SuperExpr};

#[derive(Parser)]
#[command(name = "superlambda", version, about = "Super lambda lengths of arcs in triangulated polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeSide {
    Dimer,
    Module,
}

#[derive(clap::Args)]
struct Target {
    /// Triangulation file.
    input: PathBuf,
    /// Arc as `p,q`; defaults to the longest arc.
    #[arg(long, value_parser = parse_arc)]
    arc: Option<(usize, usize)>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a triangulation and print its labels, orientation and order.
    Validate { input: PathBuf },
    /// Print the snake graph of an arc.
    Snake(Target),
    /// Export the cover or submodule lattice.
    Lattice {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, value_enum, default_value_t = LatticeSide::Dimer)]
        side: LatticeSide,
    },
    /// Classical expansion from perfect matchings.
    Expand(Target),
    /// Super lambda length from double dimer covers.
    SuperExpand(Target),
    /// Super lambda length from the cluster character.
    SuperCc(Target),
    /// Matched cover and submodule pairs.
    Bijection {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Run the route, lattice and Ptolemy suites.
    Verify {
        #[arg(long, default_value_t = 9)]
        vmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest polygon checked exhaustively; larger ones are sampled.
        #[arg(long, default_value_t = 9)]
        exhaustive: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_tiles: usize,
    },
    /// Count d-dimer covers and submodules.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
}

fn parse_arc(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p = p.trim().parse().map_err(|e| format!("{p:?}: {e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{q:?}: {e}"))?;
    Ok((p, q))
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Output {
    text: String,
    ok: bool,
}

fn load(path: &PathBuf) -> Result<OrientedTriangulation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(io::read_triangulation(&text)?)
}

fn resolve(t: &Target) -> Result<(OrientedTriangulation, (usize, usize)), Failure> {
    let ot = load(&t.input)?;
    let arc = t.arc.unwrap_or_else(|| ot.gamma());
    Ok((ot, arc))
}

fn expr(e: &SuperExpr, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", e.canonical_string()),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&e.to_json()).unwrap()),
    }
}

fn validate_out(ot: &OrientedTriangulation, format: Format) -> String {
    let order: Vec<String> = ot.theta_order().order.iter().map(|i| format!("θ{i}")).collect();
    if format == Format::Json {
        let v = json!({
            "triangulation": TriangulationFile::of(ot.base()),
            "directions": ot.directions(),
            "triangles": ot.triangles(),
            "fan_centres": ot.fan_centres(),
            "theta_order": ot.theta_order().order,
            "quiver": ot.quiver(),
        });
        return format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
    }
    let mut s = String::new();
    let (g0, g1) = ot.gamma();
    let _ = writeln!(s, "vertices {}", ot.vertices());
    let _ = writeln!(s, "gamma {g0},{g1}");
    for (i, &(p, q)) in ot.arcs().iter().enumerate() {
        let (a, b) = ot.direction(i + 1);
        let _ = writeln!(s, "arc {} {p},{q} {a}->{b}", i + 1);
    }
    for (i, t) in ot.triangles().iter().enumerate() {
        let _ = writeln!(s, "triangle {} {},{},{}", i + 1, t[0], t[1], t[2]);
    }
    let _ = writeln!(s, "order {}", order.join(" > "));
    let arrows: Vec<String> = ot.quiver().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    let _ = writeln!(s, "quiver {}", arrows.join(" "));
    s
}

fn snake_out(g: &SnakeGraph, format: Format) -> String {
    let dmin: Vec<(usize, char)> = g
        .encode(&g.min_cover(1))
        .into_iter()
        .map(|(t, c, _)| (t + 1, c))
        .collect();
    if format == Format::Json {
        let tiles: Vec<_> = g
            .tiles()
            .iter()
            .map(|t| json!({"face": t.face, "corners": t.corners, "thetas": [t.theta_bl, t.theta_tr]}))
            .collect();
        let v = json!({"tiles": tiles, "dirs": g.dirs(), "dmin": dmin});
        return format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
    }
    let mut s = String::new();
    for (i, t) in g.tiles().iter().enumerate() {
        let corners = t.corners.map(|c| format!(" corners {},{},{},{}", c[0], c[1], c[2], c[3]));
        let dir = match i {
            0 => String::new(),
            _ => format!(" {:?}", g.dirs()[i - 1]),
        };
        let _ = writeln!(
            s,
            "tile {} face {}{}{} thetas {},{}",
            i + 1,
            t.face,
            dir,
            corners.unwrap_or_default(),
            t.theta_bl,
            t.theta_tr
        );
    }
    let d: Vec<String> = dmin.iter().map(|(t, c)| format!("{t}{c}")).collect();
    let _ = writeln!(s, "dmin {}", d.join(" "));
    s
}

fn report_line(name: &str, r: &SweepReport) -> String {
    let mut s = format!("{name}: cases={} passes={} failures={}\n", r.cases, r.passes, r.failures.len());
    if let Some(f) = r.failures.first() {
        let _ = writeln!(s, "  first failure [{}] {}: {} | {}", f.kind, f.case, f.left, f.right);
    }
    s
}

fn verify(
    vmax: usize,
    seed: u64,
    exhaustive: usize,
    samples: usize,
    max_tiles: usize,
    format: Format,
) -> Result<Output, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts: Vec<Triangulation> = Vec::new();
    for v in 4..=vmax {
        let all = all_triangulations(v);
        if v <= exhaustive || all.len() <= samples {
            ts.extend(all);
        } else {
            let mut picked = sample(&mut rng, all.len(), samples).into_vec();
            picked.sort_unstable();
            ts.extend(picked.into_iter().map(|i| all[i].clone()));
        }
    }
    let routes: Vec<Triangulation> = ts.iter().filter(|t| t.vertices() >= 5).cloned().collect();
    let routes = cc::sweep(&routes, cc::compare_routes)?;
    let ptolemy = cc::sweep(&ts, cc::check_quadrilaterals)?;
    let mut lattice = SweepReport::default();
    for k in 1..=max_tiles {
        let ds: &[u32] = if k <= 4 { &[2, 3, 4] } else { &[2] };
        lattice = lattice.merge(lattice_sweep(&all_shapes(k), ds)?);
    }
    let ok = routes.ok() && ptolemy.ok() && lattice.ok();
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "routes": routes, "ptolemy": ptolemy, "lattice": lattice, "ok": ok
            }))
            .unwrap()
        ),
        Format::Text => {
            let mut s = report_line("routes", &routes);
            s.push_str(&report_line("ptolemy", &ptolemy));
            s.push_str(&report_line("lattice", &lattice));
            s.push_str(if ok { "verify: ok\n" } else { "verify: FAILED\n" });
            s
        }
    };
    Ok(Output { text, ok })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.format;
    let done = |text: String| Ok(Output { text, ok: true });
    match &cli.command {
        Command::Validate { input } => done(validate_out(&load(input)?, format)),
        Command::Snake(t) => {
            let (ot, (p, q)) = resolve(t)?;
            done(snake_out(&build_snake(&ot, p, q)?, format))
        }
        Command::Expand(t) => {
            let (ot, (p, q)) = resolve(t)?;
            done(expr(&classical_expansion(&ot, p, q)?, format))
        }
        Command::SuperExpand(t) => {
            let (ot, (p, q)) = resolve(t)?;
            done(expr(&super_lambda_dimer(&ot, p, q)?, format))
        }
        Command::SuperCc(t) => {
            let (ot, (p, q)) = resolve(t)?;
            done(expr(&cc::super_cc(&ot, p, q)?, format))
        }
        Command::Lattice { target, d, side } => {
            let (ot, (p, q)) = resolve(target)?;
            let text = match side {
                LatticeSide::Dimer => {
                    let g = build_snake(&ot, p, q)?;
                    let ex = io::cover_lattice_export(&g, &g.enumerate_covers(*d));
                    match format {
                        Format::Json => ex.to_json() + "\n",
                        Format::Text => ex.to_dot(|c| io::cover_label(c)),
                    }
                }
                LatticeSide::Module => {
                    let m = module_of_arc(&ot, p, q)?;
                    let (nodes, edges) = submodule_lattice(&Quiver::of(&ot), m.support, *d);
                    let ex = io::submodule_lattice_export(&nodes, &edges);
                    match format {
                        Format::Json => ex.to_json() + "\n",
                        Format::Text => ex.to_dot(|r| io::rank_label(r)),
                    }
                }
            };
            done(text)
        }
        Command::Bijection { target, d } => {
            let (ot, (p, q)) = resolve(target)?;
            let g = build_snake(&ot, p, q)?;
            let pairs = bridge::bijection(&g, *d)?;
            let text = match format {
                Format::Json => {
                    let v: Vec<_> = pairs
                        .iter()
                        .map(|(c, n)| json!({"cover": g.encode(c), "rank": n.rank}))
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
                Format::Text => pairs
                    .iter()
                    .map(|(c, n)| format!("{} -> {}\n", io::cover_label(&g.encode(c)), io::rank_label(&n.rank)))
                    .collect(),
            };
            done(text)
        }
        Command::Count { target, d } => {
            let (ot, (p, q)) = resolve(target)?;
            let g = build_snake(&ot, p, q)?;
            let dimers = g.enumerate_covers(*d).nodes.len();
            let m = module_of_arc(&ot, p, q)?;
            let subs = submodules(&Quiver::of(&ot), m.support, *d).len();
            let equal = dimers == subs;
            let text = match format {
                Format::Json => format!("{}\n", json!({"dimers": dimers, "submodules": subs, "equal": equal})),
                Format::Text => format!("dimers={dimers} submodules={subs} equal={equal}\n"),
            };
            Ok(Output { text, ok: equal })
        }
        Command::Verify {
            vmax,
            seed,
            exhaustive,
            samples,
            max_tiles,
        } => verify(*vmax, *seed, *exhaustive, *samples, *max_tiles, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        if out.ok {
            Ok(())
        } else {
            Err(Failure::Check("verification failed".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
