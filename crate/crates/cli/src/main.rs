use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motsplit::bigraded::{
    coefficient_model, has_vanishing_line, BiDegree, StarGrading, StarSeries,
};
use motsplit::hopf::algebroid::reduce;
use motsplit::hopf::io::{self, Structure};
use motsplit::hopf::{
    cor22_pipeline, mm_split, primitives, right_unit_descends, validate_comodule, validate_hopf,
    ComoduleData, HopfData, Report, StructureMap,
};
use motsplit::nsym::{build_ei, cofree_divide, nsym_series, vanishing_certificate, DualSteenrod};
use motsplit::steenrod::{commute_left, commute_right, moore_homology, rp_ring, Side};
use motsplit::{acceptance, extpower, gw, Error};
use serde_json::{json, Value};

const FIXTURE_ENV: &str = "MOTSPLIT_FIXTURES";

#[derive(Parser)]
#[command(
    name = "motsplit",
    version,
    about = "Exact checks for split Tate objects, extended powers and cofree splittings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(clap::Args)]
struct Out {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(clap::Args)]
struct Cell {
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    w: i64,
}

#[derive(clap::Args)]
struct Graded {
    /// Slope `u/v` of the star grading.
    #[arg(long, default_value = "2/3")]
    slope: StarGrading,
    /// Truncation in shift.
    #[arg(long, default_value_t = 24)]
    max_shift: i64,
}

#[derive(clap::Args)]
struct Input {
    /// Structure file, or the name of a shipped fixture.
    #[arg(long)]
    input: String,
    #[arg(long, default_value_t = 12)]
    trunc: i64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand D_2 of a single cell.
    D2 {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 24)]
        max_shift: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Membership in the closure class, and closure of the D_2 expansion.
    SCheck {
        #[command(flatten)]
        cell: Cell,
        #[command(flatten)]
        g: Graded,
        #[command(flatten)]
        out: Out,
    },
    /// D_2 against Thom periodicity `X -> X ∧ T^e`.
    Thom {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 1)]
        e: i64,
        #[arg(long, default_value_t = 24)]
        max_shift: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Series relation between D_2(S^j) and D_2(S^{j+1}).
    Suspension {
        #[arg(long, alias = "p", allow_hyphen_values = true)]
        j: i64,
        #[arg(long, default_value_t = 24)]
        max_shift: i64,
        #[command(flatten)]
        out: Out,
    },
    /// The container E_i as a sum of products.
    Ei {
        #[arg(long)]
        i: u64,
        #[command(flatten)]
        g: Graded,
        #[command(flatten)]
        out: Out,
    },
    /// Star series of the E_i for i up to max-i, and their sum.
    Nsym {
        #[arg(long, default_value_t = 4)]
        max_i: u64,
        #[command(flatten)]
        g: Graded,
        #[command(flatten)]
        out: Out,
    },
    /// Vanishing-line certificate for E_i.
    Vanish {
        #[arg(long)]
        i: u64,
        #[command(flatten)]
        g: Graded,
        #[arg(long, default_value = "field_closed")]
        coeffs: String,
        #[command(flatten)]
        out: Out,
    },
    /// Divide a star series by the reduced dual Steenrod series.
    Divide {
        /// Dividend as `deg:coeff,...`; defaults to the combined nsym series.
        #[arg(long)]
        mbar: Option<String>,
        /// Divisor as `deg:coeff,...`; defaults to the dual Steenrod fixture.
        #[arg(long)]
        abar: Option<String>,
        #[arg(long)]
        dual_steenrod: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_i: u64,
        #[command(flatten)]
        g: Graded,
        #[command(flatten)]
        out: Out,
    },
    /// Check the axioms of a structure file.
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Primitives of a comodule.
    Primitives {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Split a comodule algebra as V ⊗ A.
    MmSplit {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Split a comodule over a Hopf algebroid as W ⊗_R Γ.
    Cor22 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    #[command(subcommand)]
    Steenrod(SteenrodCmd),
    #[command(subcommand)]
    Gw(GwCmd),
    /// Run every acceptance criterion.
    VerifyAll {
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum SteenrodCmd {
    /// Move the coefficient x past Sq^{2n}.
    Commute {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "right")]
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// The ring F_2[u, v, τ, ρ]/(u^2 + τv + ρu) with Sq^1.
    Rp {
        #[arg(long, default_value_t = 10)]
        maxdeg: i64,
        /// Set ρ = 0.
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Homology of the mod 2 Moore object.
    Moore {
        #[arg(long, default_value = "standard")]
        model: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum GwCmd {
    /// n_ε for n up to the bound.
    Neps {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: Out,
    },
    Whitehead {
        #[command(flatten)]
        out: Out,
    },
    Trace {
        #[command(flatten)]
        out: Out,
    },
    Torsion {
        #[command(flatten)]
        out: Out,
    },
}

/// A finished command: text and JSON renderings plus a verdict.
struct Done {
    ok: bool,
    text: String,
    json: Value,
}

impl Done {
    fn new(ok: bool, text: String, json: Value) -> Self {
        Done { ok, text, json }
    }
}

enum Fail {
    /// The computation ran and a check came out false.
    Verify(String),
    /// Bad flags or input.
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInClass { .. }
            | Error::SMembershipViolation { .. }
            | Error::NegativeCoefficient { .. }
            | Error::NotSurjective { .. }
            | Error::NotComoduleAlgebraMap { .. }
            | Error::SplitFailed { .. }
            | Error::HypothesisFailed { .. }
            | Error::IsoFailed { .. }
            | Error::NotConnected(_)
            | Error::TerminationBound(_) => Fail::Verify(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type Run = Result<Done, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.cmd {
        Cmd::D2 { out, .. }
        | Cmd::SCheck { out, .. }
        | Cmd::Thom { out, .. }
        | Cmd::Suspension { out, .. }
        | Cmd::Ei { out, .. }
        | Cmd::Nsym { out, .. }
        | Cmd::Vanish { out, .. }
        | Cmd::Divide { out, .. }
        | Cmd::Validate { out, .. }
        | Cmd::Primitives { out, .. }
        | Cmd::MmSplit { out, .. }
        | Cmd::Cor22 { out, .. }
        | Cmd::VerifyAll { out }
        | Cmd::Steenrod(
            SteenrodCmd::Commute { out, .. }
            | SteenrodCmd::Rp { out, .. }
            | SteenrodCmd::Moore { out, .. },
        )
        | Cmd::Gw(
            GwCmd::Neps { out, .. }
            | GwCmd::Whitehead { out }
            | GwCmd::Trace { out }
            | GwCmd::Torsion { out },
        ) => out.format,
    };
    match dispatch(cli.cmd) {
        Ok(done) => {
            match format {
                Format::Table => print!("{}", done.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&done.json).expect("json")
                ),
            }
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd) -> Run {
    match cmd {
        Cmd::D2 {
            cell, max_shift, ..
        } => d2(cell, max_shift),
        Cmd::SCheck { cell, g, .. } => s_check(cell, g),
        Cmd::Thom {
            cell, e, max_shift, ..
        } => thom(cell, e, max_shift),
        Cmd::Suspension { j, max_shift, .. } => suspension(j, max_shift),
        Cmd::Ei { i, g, .. } => ei(i, g),
        Cmd::Nsym { max_i, g, .. } => nsym(max_i, g),
        Cmd::Vanish { i, g, coeffs, .. } => vanish(i, g, &coeffs),
        Cmd::Divide {
            mbar,
            abar,
            dual_steenrod,
            max_i,
            g,
            ..
        } => divide(
            mbar.as_deref(),
            abar.as_deref(),
            dual_steenrod.as_deref(),
            max_i,
            g,
        ),
        Cmd::Validate { input, .. } => validate(input),
        Cmd::Primitives { input, .. } => prims(input),
        Cmd::MmSplit { input, .. } => split(input),
        Cmd::Cor22 { input, .. } => cor22(input),
        Cmd::Steenrod(s) => steenrod(s),
        Cmd::Gw(g) => gw_cmd(g),
        Cmd::VerifyAll { .. } => verify_all(),
    }
}

fn cell(c: &Cell) -> BiDegree {
    BiDegree::new(c.p, c.w)
}

fn d2(c: Cell, max_shift: i64) -> Run {
    let d = cell(&c);
    let s = extpower::d2_cell(d, max_shift)?;
    let text = format!("D_2({d}) up to shift {max_shift}:\n{}\n", s.render());
    Ok(Done::new(true, text, json!({"cell": d, "d2": s.to_json()})))
}

fn s_check(c: Cell, g: Graded) -> Run {
    let d = cell(&c);
    let m = extpower::s_member(d, g.slope);
    let mut text = format!("{d} at slope {}: ", g.slope);
    let mut js = json!({"cell": d, "slope": g.slope.to_string(), "member": m.member});
    match m.failed {
        Some(f) => {
            let _ = writeln!(text, "not a member, condition {} fails", f.code());
            js["failed_condition"] = json!(f.code());
            Ok(Done::new(false, text, js))
        }
        None => {
            let r = extpower::s_closure_check(d, g.slope, g.max_shift)?;
            let _ = writeln!(
                text,
                "member; {} summands of D_2 up to shift {}, {} outside the class",
                r.checked,
                g.max_shift,
                r.violations.len()
            );
            for v in &r.violations {
                let _ = writeln!(text, "  {} fails condition {}", v.cell, v.condition);
            }
            js["closure"] = json!(r);
            Ok(Done::new(r.ok(), text, js))
        }
    }
}

fn thom(c: Cell, e: i64, max_shift: i64) -> Run {
    let d = cell(&c);
    let ok = extpower::thom_check(d, e, max_shift)?;
    let text = format!(
        "D_2({d} ∧ T^{e}) = T^{} ∧ D_2({d}) up to shift {max_shift}: {ok}\n",
        2 * e
    );
    Ok(Done::new(
        ok,
        text,
        json!({"cell": d, "e": e, "trunc": max_shift, "ok": ok}),
    ))
}

fn suspension(j: i64, max_shift: i64) -> Run {
    let ok = extpower::suspension_relation_check(j, max_shift)?;
    let text = format!("suspension relation for S^{j} up to shift {max_shift}: {ok}\n");
    Ok(Done::new(
        ok,
        text,
        json!({"j": j, "trunc": max_shift, "ok": ok}),
    ))
}

fn ei(i: u64, g: Graded) -> Run {
    let e = build_ei(i, g.slope, g.max_shift)?;
    let text = format!(
        "E_{i} at slope {} up to shift {}: {} products\n{}\n",
        g.slope,
        g.max_shift,
        e.len(),
        e.render()
    );
    Ok(Done::new(true, text, e.to_json()))
}

fn nsym(max_i: u64, g: Graded) -> Run {
    let t = nsym_series(max_i, g.slope, g.max_shift)?;
    Ok(Done::new(true, t.render_table(), t.to_json()))
}

fn vanish(i: u64, g: Graded, coeffs: &str) -> Run {
    let model = coefficient_model(coeffs)?;
    let e = build_ei(i, g.slope, g.max_shift)?;
    let cert = vanishing_certificate(&e, g.slope);
    let module = has_vanishing_line(&e.flatten(), g.slope, model.as_ref());
    let mut text = format!(
        "E_{i} at slope {}: {} products, ok = {}",
        cert.slope, cert.products, cert.ok
    );
    if let (Some(s), Some(w)) = (cert.min_slack, &cert.witness) {
        let factors: Vec<String> = w.iter().map(|d| d.to_string()).collect();
        let _ = write!(text, ", min_slack {s} at [{}]", factors.join(", "));
    }
    let _ = writeln!(text);
    let _ = writeln!(
        text,
        "with {coeffs} coefficients: ok = {}, min star {}",
        module.ok,
        module
            .min_star
            .map_or("unbounded".into(), |s| s.to_string())
    );
    let _ = writeln!(text, "note: {}", cert.note);
    let ok = cert.ok && module.ok;
    Ok(Done::new(
        ok,
        text,
        json!({"i": i, "certificate": cert, "coefficients": coeffs, "module": module}),
    ))
}

fn parse_series(s: &str) -> Result<StarSeries, Fail> {
    let mut out = StarSeries::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || {
            Fail::Usage(format!(
                "cannot parse series term `{part}`, expected deg:coeff"
            ))
        };
        let (d, c) = part.split_once(':').ok_or_else(bad)?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        let c: u64 = c.trim().parse().map_err(|_| bad())?;
        out.add_at(d, c);
    }
    Ok(out)
}

fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_ENV).map(PathBuf::from)
}

fn dual_steenrod(path: Option<&Path>) -> Result<DualSteenrod, Fail> {
    if let Some(p) = path {
        return Ok(DualSteenrod::load(p)?);
    }
    if let Some(dir) = fixture_dir() {
        let p = dir.join("dual_steenrod.json");
        if p.exists() {
            return Ok(DualSteenrod::load(&p)?);
        }
    }
    Ok(DualSteenrod::builtin())
}

fn divide(mbar: Option<&str>, abar: Option<&str>, ds: Option<&Path>, max_i: u64, g: Graded) -> Run {
    let bound = g.max_shift;
    let m = match mbar {
        Some(s) => parse_series(s)?,
        None => nsym_series(max_i, g.slope, bound)?.combined.series,
    };
    let (a, source) = match abar {
        Some(s) => (parse_series(s)?, "given".to_string()),
        None => {
            let f = dual_steenrod(ds)?;
            (f.reduced_series(g.slope, bound)?, f.label)
        }
    };
    let v = cofree_divide(&m, &a, bound)?;
    let mut text = String::new();
    text.push_str(&m.render_table("mbar"));
    text.push_str(&a.render_table(&format!("abar ({source})")));
    text.push_str(&v.render_table("V"));
    Ok(Done::new(
        true,
        text,
        json!({"bound": bound, "mbar": m, "abar": a, "abar_source": source, "v": v}),
    ))
}

fn load_structure(name: &str) -> Result<Structure, Fail> {
    let path = Path::new(name);
    if path.exists() {
        return Ok(io::load(path)?);
    }
    if let Some(dir) = fixture_dir() {
        for candidate in [dir.join(name), dir.join(format!("{name}.json"))] {
            if candidate.exists() {
                return Ok(io::load(&candidate)?);
            }
        }
    }
    io::shipped()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| Fail::Usage(format!("{name}: no such file or shipped fixture")))
}

fn report_text(what: &str, r: &Report, out: &mut String) {
    if r.ok() {
        let _ = writeln!(out, "{what}: ok up to degree {}", r.n);
    } else {
        let _ = writeln!(out, "{what}: {} violations", r.violations.len());
        for v in &r.violations {
            let _ = writeln!(
                out,
                "  {} in degree {}: {}",
                v.axiom,
                v.degree,
                v.elements.join(", ")
            );
        }
    }
}

fn validate(input: Input) -> Run {
    let s = load_structure(&input.input)?;
    let mut text = String::new();
    let mut reports = Vec::new();
    match &s {
        Structure::Hopf(h) => reports.push(("hopf", validate_hopf(h))),
        Structure::Comodule { m, a, .. } => {
            reports.push(("hopf", validate_hopf(a)));
            reports.push(("comodule", validate_comodule(m, a)));
        }
        Structure::Algebroid(c) => {
            let n = input.trunc.min(c.algebroid.n);
            let d = right_unit_descends(&c.algebroid, &c.ideal, n);
            let _ = writeln!(
                text,
                "right unit descends: {}{}",
                d.holds,
                d.first_failure
                    .map_or(String::new(), |f| format!(" (fails in degree {f})"))
            );
            if !d.holds {
                return Ok(Done::new(false, text, json!({"descent": d})));
            }
            let red = reduce(c, n)?;
            reports.push(("reduced hopf", validate_hopf(&red.gamma)));
            reports.push(("reduced comodule", validate_comodule(&red.m, &red.gamma)));
        }
    }
    for (what, r) in &reports {
        report_text(what, r, &mut text);
    }
    let ok = reports.iter().all(|(_, r)| r.ok());
    let js: Value = reports
        .iter()
        .map(|(w, r)| (w.to_string(), json!(r)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    Ok(Done::new(
        ok,
        text,
        json!({"kind": s.kind(), "reports": js}),
    ))
}

/// The comodule, Hopf algebra and projection of an input; a bare Hopf
/// algebra is taken as a comodule over itself.
fn comodule_input(s: Structure) -> Result<(ComoduleData, HopfData, StructureMap), Fail> {
    match s {
        Structure::Comodule { m, a, phi } => Ok((m, a, phi)),
        Structure::Hopf(a) => {
            let m = motsplit::hopf::fixtures::regular_comodule(&a);
            let phi = StructureMap::identity(a.space(), a.n);
            Ok((m, a, phi))
        }
        Structure::Algebroid(_) => Err(Fail::Usage(
            "expected a comodule or Hopf algebra; use cor22".into(),
        )),
    }
}

fn series_text(s: &std::collections::BTreeMap<i64, usize>) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn prims(input: Input) -> Run {
    let (m, a, _) = comodule_input(load_structure(&input.input)?)?;
    let n = input.trunc.min(a.n);
    let p = primitives(&m, &a, n);
    let series = p.series();
    let mut text = format!("primitives up to degree {n}: {}\n", series_text(&series));
    for (d, labels) in p.space.degrees() {
        let _ = writeln!(text, "  {d}: {}", labels.join(", "));
    }
    Ok(Done::new(true, text, json!({"n": n, "series": series})))
}

fn split(input: Input) -> Run {
    let (m, a, phi) = comodule_input(load_structure(&input.input)?)?;
    let n = input.trunc.min(a.n);
    let s = mm_split(&m, &a, &phi, n)?;
    let mut text = format!("V up to degree {n}: {}\n", series_text(&s.v_series()));
    let _ = writeln!(
        text,
        "{:>6} {:>6} {:>8} {:>6}",
        "degree", "dim M", "dim V⊗A", "rank"
    );
    for c in &s.certificate {
        let _ = writeln!(
            text,
            "{:>6} {:>6} {:>8} {:>6}",
            c.degree, c.dim_m, c.dim_target, c.rank
        );
    }
    Ok(Done::new(
        true,
        text,
        json!({"n": n, "v_series": s.v_series(), "certificate": s.certificate}),
    ))
}

fn cor22(input: Input) -> Run {
    let Structure::Algebroid(c) = load_structure(&input.input)? else {
        return Err(Fail::Usage(
            "cor22 expects an algebroid structure file".into(),
        ));
    };
    let n = input.trunc.min(c.algebroid.n);
    let r = cor22_pipeline(&c, n)?;
    let mut text = format!(
        "W generators up to degree {n}: {}\n",
        series_text(&r.w_series)
    );
    let _ = writeln!(
        text,
        "{:>6} {:>6} {:>8} {:>6} {:>8}",
        "degree", "dim M", "dim W⊗Γ", "rank", "reduced"
    );
    for c in &r.certificate {
        let _ = writeln!(
            text,
            "{:>6} {:>6} {:>8} {:>6} {:>8}",
            c.degree, c.dim_m, c.dim_target, c.rank, c.reduced_rank
        );
    }
    Ok(Done::new(
        true,
        text,
        json!({"n": n, "w_series": r.w_series, "certificate": r.certificate}),
    ))
}

fn steenrod(cmd: SteenrodCmd) -> Run {
    match cmd {
        SteenrodCmd::Commute { n, side, .. } => {
            let r = match side {
                Side::Right => commute_right(n)?,
                Side::Left => commute_left(n)?,
            };
            let sound = motsplit::steenrod::ideal_sound(&r.expr, side);
            let lhs = match side {
                Side::Right => format!("x Sq^{{{}}}", 2 * n),
                Side::Left => format!("Sq^{{{}}} x", 2 * n),
            };
            let text = format!(
                "{lhs} = {}\n{} terms, {} rewrites, coefficients in R_+: {sound}\nassumption: {}\n",
                r.expr.render(),
                r.expr.len(),
                r.applications,
                motsplit::steenrod::IDEAL_ASSUMPTION
            );
            Ok(Done::new(
                sound,
                text,
                json!({
                    "n": n,
                    "side": side,
                    "terms": r.expr.to_json(),
                    "rendered": r.expr.render(),
                    "applications": r.applications,
                    "sound": sound,
                    "assumption": motsplit::steenrod::IDEAL_ASSUMPTION,
                }),
            ))
        }
        SteenrodCmd::Rp { maxdeg, closed, .. } => {
            let r = rp_ring(maxdeg, closed);
            let ok = r.well_defined && r.sq1_squared_zero;
            Ok(Done::new(ok, r.render_table(), json!(r)))
        }
        SteenrodCmd::Moore { model, .. } => {
            let m = moore_homology(&model)?;
            let mut text = format!("model {}\n", m.model);
            for ((b, (p, w)), (_, img)) in m.basis.iter().zip(&m.alpha) {
                let _ = writeln!(text, "  {b} in ({p},{w}) -> {img}");
            }
            for (op, s, t) in &m.dual_action {
                let _ = writeln!(text, "  {op}: {s} -> {t}");
            }
            Ok(Done::new(true, text, json!(m)))
        }
    }
}

fn gw_cmd(cmd: GwCmd) -> Run {
    match cmd {
        GwCmd::Neps { n, .. } => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for k in 0..=n {
                let e = gw::n_epsilon(k);
                let _ = writeln!(text, "{k:>4}_ε = {e}");
                rows.push(json!({"n": k, "value": e.to_string()}));
            }
            Ok(Done::new(true, text, Value::Array(rows)))
        }
        GwCmd::Whitehead { .. } => {
            let r = gw::whitehead_check();
            let mut text = String::new();
            for (f, d) in r.factors.iter().zip(&r.determinants) {
                let _ = writeln!(text, "{f}  det {d}");
            }
            let _ = writeln!(text, "product {} = {}: {}", r.product, r.target, r.ok);
            Ok(Done::new(r.ok, text, json!(r)))
        }
        GwCmd::Trace { .. } => {
            let (r, _) = gw::lefschetz_trace_derivation();
            let text = format!("tr = {}\n", r.solved);
            Ok(Done::new(r.ok, text, json!(r)))
        }
        GwCmd::Torsion { .. } => {
            let r = gw::torsion_equivalence();
            let text = format!(
                "2_ε from {{{}}}: {}\n2 from {{{}}}: {}\nN(2) = {}\n",
                r.forward.relations.join(", "),
                r.forward.ok,
                r.backward.relations.join(", "),
                r.backward.ok,
                r.norm_of_two
            );
            let ok = r.ok();
            Ok(Done::new(ok, text, json!(r)))
        }
    }
}

fn verify_all() -> Run {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (id, _) in acceptance::ids() {
        let o = acceptance::run(id).expect("listed criterion");
        let _ = writeln!(text, "{}", o.line());
        let pass = o.pass;
        rows.push(json!(o));
        if !pass {
            let _ = writeln!(text, "stopped at criterion {id}");
            return Ok(Done::new(false, text, Value::Array(rows)));
        }
    }
    Ok(Done::new(true, text, Value::Array(rows)))
}
