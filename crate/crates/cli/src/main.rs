mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use crjet_core::cartan::{
    assemble_connection, curvature_closed_form, curvature_structural, derived_invariants, real_form_check, BASIS_NAMES, PAIRS,
};
use crjet_core::geometry::{build_frame, compute_p, dual_coframe, duality_residual, jacobi_residual, verify_structure_equations, Hypersurface};
use crjet_core::matrix::Mat3;
use crjet_core::segre::{associated_ode, prolong_map, solve_segre, transform_phi, transform_phi_expr};
use crjet_core::transcend::{jet_transcendence_report_with, SearchBounds, SearchOutcome, DEFAULT_ESCALATIONS};

use report::{emit_report, Node, Obj, OutputFormat, Report};

#[derive(Parser)]
#[command(name = "crjet", version, about = "Invariants, Segre ODEs and jet transcendence of real hypersurfaces in C^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct InputArg {
    /// Hypersurface file (`type`, `convention`, `H` or `F`).
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Frame, P, connection, curvature, derived invariants and real-form checks.
    Invariants {
        #[command(flatten)]
        input: InputArg,
        /// Depth of iterated fundamental derivatives.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=4))]
        depth: u32,
    },
    /// Segre parameters A, B and the associated ODE right-hand side.
    Ode {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Second prolongation of a point map and the pulled-back ODE.
    Prolong {
        /// Map file with keys `f` and `g`.
        #[arg(long)]
        map: PathBuf,
        /// Target ODE file with key `phi`.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        ode: Option<PathBuf>,
        /// Target hypersurface; its ODE is pulled back as a series.
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Bounded search for an annihilating pseudo-polynomial of the ODE.
    Transcend {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        /// Maximal degree N in u.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_deg_u: u32,
        /// Maximal degree d in w'.
        #[arg(long, default_value_t = 6)]
        max_deg_y: u32,
        /// Maximal total degree e in the remaining variables.
        #[arg(long, default_value_t = 6)]
        max_deg_x: u32,
        /// Order doublings allowed after a witness fails re-verification.
        #[arg(long, default_value_t = DEFAULT_ESCALATIONS)]
        escalations: u32,
    },
    /// Structure equations, Jacobi relations, real-form relations and curvature cross-check.
    Verify {
        #[command(flatten)]
        input: InputArg,
    },
}

fn read(path: &Path) -> Result<input::InputFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    input::parse_kv(&text).with_context(|| format!("in {}", path.display()))
}

fn load_hypersurface(path: &Path) -> Result<(Hypersurface, Vec<(String, String)>)> {
    let file = read(path)?;
    let m = input::hypersurface(&file).with_context(|| format!("in {}", path.display()))?;
    Ok((m, file.echo()))
}

fn mat_node(m: &Mat3) -> Node {
    Node::List(m.0.iter().map(|row| Node::List(row.iter().map(Node::from).collect())).collect())
}

fn derived_node(d: &[crjet_core::cartan::DerivedInvariant]) -> Node {
    let mut out = Vec::new();
    for inv in d.iter().skip(1) {
        for (seq, slots) in inv.entries() {
            let word: Vec<&str> = seq.iter().map(|&s| BASIS_NAMES[s]).collect();
            for (k, m) in slots.iter().enumerate() {
                for i in 0..3 {
                    for j in 0..3 {
                        let e = m.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let (u, v) = PAIRS[k];
                        out.push(
                            Obj::new()
                                .put("order", inv.order())
                                .put("word", word.join(" "))
                                .put("pair", format!("{},{}", u.name(), v.name()))
                                .put("entry", format!("{},{}", i + 1, j + 1))
                                .put("value", e)
                                .into(),
                        );
                    }
                }
            }
        }
    }
    Node::List(out)
}

fn invariants(path: &Path, depth: u32) -> Result<Report> {
    let (m, echo) = load_hypersurface(path)?;
    let fr = build_frame(&m)?;
    let sf = compute_p(&fr)?;
    let conn = assemble_connection(&sf);
    let curv = curvature_closed_form(&sf);
    let derived = derived_invariants(&curv, &conn, &sf, depth as usize)?;
    let field = |v: &crjet_core::geometry::VectorField| Node::from(Obj::new().put("d_z", &v.c[0]).put("d_zb", &v.c[1]).put("d_v", &v.c[2]));
    let checks = real_form_check(&sf, &curv)?;
    let mut diagnostics = Vec::new();
    for c in checks.iter().filter(|c| c.holds != c.expected) {
        diagnostics.push(format!("relation '{}' evaluated to {} (expected {})", c.name, c.holds, c.expected));
    }
    let transcendental = std::iter::once(sf.p())
        .chain(curv.invariants())
        .chain(derived.iter().flat_map(|d| d.all_exprs()))
        .any(|e| e.has_transcendental_atoms());
    let results = Obj::new()
        .put("frame", Obj::new().put("X", field(&fr.x)).put("Xb", field(&fr.xb)).put("Y", field(&fr.y)))
        .put("P", sf.p())
        .put("Pbar", sf.pbar())
        .put("connection", Obj::new().put("omega_j", mat_node(&conn.mj)).put("omega_l", mat_node(&conn.ml)).put("omega_lb", mat_node(&conn.mlb)))
        .put("I1", curv.i1())
        .put("I2", curv.i2())
        .put("I3", curv.i3())
        .put("I4", curv.i4())
        .put("derived", derived_node(&derived))
        .put("depth", depth)
        .put("invariants_transcendental_free", !transcendental)
        .put(
            "real_form",
            Node::List(checks.iter().map(|c| Obj::new().put("relation", c.name).put("holds", c.holds).put("expected", c.expected).into()).collect()),
        );
    Ok(Report { command: "invariants".into(), input_echo: echo, results: results.into(), diagnostics })
}

fn ode(path: &Path, order: u32) -> Result<Report> {
    let (m, mut echo) = load_hypersurface(path)?;
    echo.push(("order".into(), order.to_string()));
    let s = solve_segre(&m, order)?;
    let f = associated_ode(&m, order)?;
    let results = Obj::new().put("A", s.a).put("B", s.b).put("phi_series", f.phi.clone()).put("phi_w_free", f.is_w_free());
    Ok(Report { command: "ode".into(), input_echo: echo, results: results.into(), diagnostics: Vec::new() })
}

fn prolong(map_path: &Path, ode_path: Option<&Path>, hyp: Option<&Path>, order: u32) -> Result<Report> {
    let mfile = read(map_path)?;
    let map = input::map(&mfile).with_context(|| format!("in {}", map_path.display()))?;
    let mut echo: Vec<(String, String)> = mfile.echo().into_iter().map(|(k, v)| (format!("map.{k}"), v)).collect();
    let jet = prolong_map(&map)?;
    let [i0, i1, i2, i3] = map.prolongation_coefficients();
    let mut results = Obj::new()
        .put("f", &jet.f)
        .put("g", &jet.g)
        .put("g1", &jet.g1)
        .put("g2", &jet.g2)
        .put("J", map.jacobian())
        .put("prolong.I0", i0)
        .put("prolong.I1", i1)
        .put("prolong.I2", i2)
        .put("prolong.I3", i3);
    if let Some(p) = ode_path {
        let ofile = read(p)?;
        let phi = input::ode(&ofile).with_context(|| format!("in {}", p.display()))?;
        echo.extend(ofile.echo().into_iter().map(|(k, v)| (format!("ode.{k}"), v)));
        results.push("phi", transform_phi_expr(&phi, &map)?);
    } else if let Some(p) = hyp {
        let (m, e) = load_hypersurface(p)?;
        echo.extend(e.into_iter().map(|(k, v)| (format!("target.{k}"), v)));
        echo.push(("order".into(), order.to_string()));
        let target = associated_ode(&m, order)?;
        results.push("phi_series", transform_phi(&target, &map)?.phi);
    }
    Ok(Report { command: "prolong".into(), input_echo: echo, results: results.into(), diagnostics: Vec::new() })
}

fn outcome_node(o: &SearchOutcome) -> Node {
    match o {
        SearchOutcome::Witness(w) => {
            let coeffs: Vec<Node> = w
                .terms
                .iter()
                .map(|t| {
                    Obj::new()
                        .put("u_degree", t.k)
                        .put("x_exponents", Node::List(t.x_exp.iter().map(|&e| Node::from(e)).collect()))
                        .put("y_exponent", t.y_exp)
                        .put("coefficient", crjet_core::Expr::constant(t.coeff.clone()))
                        .into()
                })
                .collect();
            let x_vars = Node::List(w.x_vars.iter().map(|v| Node::from(v.as_str())).collect());
            Obj::new()
                .put("witness", Obj::new().put("N", w.n).put("x_vars", x_vars).put("y_var", w.y_var.as_str()).put("polynomial", w.to_expr()).put("coefficients", Node::List(coeffs)))
                .into()
        }
        SearchOutcome::NoneUpTo { bounds, certificates } => {
            let certs: Vec<Node> = certificates
                .iter()
                .map(|c| {
                    Obj::new()
                        .put("N", c.n)
                        .put("rows", c.rows)
                        .put("columns", c.columns)
                        .put("rank_mod_p", c.rank)
                        .put("prime", c.prime.to_string())
                        .put("empty_kernel", c.is_empty_kernel())
                        .into()
                })
                .collect();
            Obj::new().put("none_up_to", Obj::new().put("bounds", bounds_node(bounds)).put("certificates", Node::List(certs))).into()
        }
    }
}

fn bounds_node(b: &SearchBounds) -> Node {
    Obj::new().put("N", b.n_max).put("d", b.d_max).put("e", b.e_max).put("order", b.order).into()
}

fn transcend(path: &Path, bounds: SearchBounds, escalations: u32) -> Result<Report> {
    let (m, mut echo) = load_hypersurface(path)?;
    echo.push(("bounds".into(), format!("N={} d={} e={} order={}", bounds.n_max, bounds.d_max, bounds.e_max, bounds.order)));
    let r = jet_transcendence_report_with(&m, &bounds, escalations)?;
    let mut diagnostics = Vec::new();
    if bounds.order < bounds.floor() {
        diagnostics.push(format!(
            "order {} is below the floor (N+1)(d+1) = {}; low-order kernels may be artifacts of truncation",
            bounds.order,
            bounds.floor()
        ));
    }
    for a in r.attempts.iter().filter(|a| a.verified_at_double == Some(false)) {
        diagnostics.push(format!("witness found at order {} failed re-verification at order {}", a.order, 2 * a.order));
    }
    let attempts: Vec<Node> = r
        .attempts
        .iter()
        .map(|a| {
            let v = match a.verified_at_double {
                Some(true) => "passed",
                Some(false) => "failed",
                None => "not applicable",
            };
            Obj::new().put("order", a.order).put("verification_at_double_order", v).put("outcome", outcome_node(&a.outcome)).into()
        })
        .collect();
    let x_vars = Node::List(r.x_vars.iter().map(|v| Node::from(v.as_str())).collect());
    let results = Obj::new()
        .put("summary", r.summary())
        .put("rigid", r.rigid)
        .put("x_vars", x_vars)
        .put("result", outcome_node(r.outcome()))
        .put("attempts", Node::List(attempts));
    Ok(Report { command: "transcend".into(), input_echo: echo, results: results.into(), diagnostics })
}

fn verify(path: &Path) -> Result<Report> {
    let (m, echo) = load_hypersurface(path)?;
    let fr = build_frame(&m)?;
    let co = dual_coframe(&fr)?;
    let sf = compute_p(&fr)?;
    let st = verify_structure_equations(&fr, &co, &sf)?;
    let duality = duality_residual(&fr, &co).is_zero();
    let jacobi = jacobi_residual(&fr).is_zero();
    let curv = curvature_closed_form(&sf);
    let conn = assemble_connection(&sf);
    let structural = curvature_structural(&conn, &sf)?;
    let checks = real_form_check(&sf, &curv)?;
    let mut diagnostics = Vec::new();
    let mut all = st.all_zero() && duality && jacobi && structural == curv;
    for c in &checks {
        if c.holds != c.expected {
            all = false;
            diagnostics.push(format!("relation '{}' evaluated to {} (expected {})", c.name, c.holds, c.expected));
        }
    }
    let residuals = |v: &[crjet_core::Expr; 3]| Node::List(v.iter().map(Node::from).collect());
    let results = Obj::new()
        .put("structure_equations", Obj::new().put("holds", st.all_zero()).put("dj_residual", residuals(&st.dj)).put("dl_residual", residuals(&st.dl)).put("dlb_residual", residuals(&st.dlb)))
        .put("coframe_duality", duality)
        .put("frame_jacobi_identity", jacobi)
        .put("structural_equals_closed_form", structural == curv)
        .put(
            "relations",
            Node::List(checks.iter().map(|c| Obj::new().put("relation", c.name).put("holds", c.holds).put("expected", c.expected).into()).collect()),
        )
        .put("all_expected", all);
    Ok(Report { command: "verify".into(), input_echo: echo, results: results.into(), diagnostics })
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Invariants { input, depth } => invariants(&input.input, depth),
        Command::Ode { input, order } => ode(&input.input, order),
        Command::Prolong { map, ode, input, order } => prolong(&map, ode.as_deref(), input.as_deref(), order),
        Command::Transcend { input, order, max_deg_u, max_deg_y, max_deg_x, escalations } => {
            transcend(&input.input, SearchBounds { n_max: max_deg_u, d_max: max_deg_y, e_max: max_deg_x, order }, escalations)
        }
        Command::Verify { input } => verify(&input.input),
    }
}

/// 2 for failed mathematical preconditions, 1 for any other input problem.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<crjet_core::Error>()) {
        Some(ce) if ce.is_precondition() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            print!("{}", emit_report(&r, format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
