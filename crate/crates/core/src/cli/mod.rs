//! Command driver shared by the `mcflow` binary and the FFI crate.
//!
//! [`run`] never panics on user input and never prints; it returns a
//! [`ReportDocument`] whose `exit_status` is the process exit code.

mod document;
mod oracle;
mod render;

pub use document::{
    CheckRecord, DriftRecord, FdRecord, FormsSection, FrameSection, IntegrationSection, NumericSection, OrderRecord,
    ReportDocument, SampleRecord,
};
pub use render::{render_json, render_text};

use std::path::Path;

use crate::algebra::{BigRational, RationalFunction};
use crate::calculus::{integral_differential, interior_product, KForm, LogIntegral, VectorField3};
use crate::mcframe::{
    bihamiltonian_verify, conformal_transform, frame_suite, heisenberg_verify, potential_from_gamma, sigma_residual,
    verify_maurer_cartan, Check, McframeError, Sl2Frame, VerificationReport,
};
use crate::numeric::{SampleBox, SampleOptions};
use crate::parser::{parse_rational, parse_system, ParseError, SystemSpec};
use crate::systems::{builtin, concordance, dh_reduction_check, grading_check, BuiltinSystem, FrameKind, BUILTIN_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Derive,
    Verify,
    Integrate,
    Sample,
    CheckFile,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Derive => "derive",
            Command::Verify => "verify",
            Command::Integrate => "integrate",
            Command::Sample => "sample",
            Command::CheckFile => "check-file",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    /// `+1` keeps only `*_pos` integrals, `-1` only `*_neg`; `None` keeps both.
    pub eps: Option<i8>,
    pub rho: Option<String>,
    pub f: Option<String>,
    pub points: usize,
    pub h: f64,
    pub t: f64,
    pub from: [f64; 3],
    pub seed: u64,
    /// Sampling tolerance for residuals that are exactly zero.
    pub tolerance: f64,
    /// Sampling box `[lo, hi]³`.
    pub sample_box: (i64, i64),
    pub drift_tolerance: f64,
    /// Restricts `sample` to one check.
    pub check: Option<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        let s = SampleOptions::default();
        RunOptions {
            eps: None,
            rho: None,
            f: None,
            points: s.points,
            h: 1e-3,
            t: 0.2,
            from: [1.0, 1.0, 1.0],
            seed: s.seed,
            tolerance: s.tolerance,
            sample_box: (-3, 3),
            drift_tolerance: 1e-8,
            check: None,
        }
    }
}

impl RunOptions {
    fn sample_options(&self) -> SampleOptions {
        SampleOptions {
            points: self.points,
            tolerance: self.tolerance,
            seed: self.seed,
            bounds: SampleBox {
                lo: BigRational::from_integer(self.sample_box.0.into()),
                hi: BigRational::from_integer(self.sample_box.1.into()),
                ..SampleBox::default()
            },
            ..SampleOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandRequest {
    pub command: Command,
    /// Builtin name or path to a `.sys` file (`check-file` always reads a path).
    pub system: String,
    pub options: RunOptions,
}

impl CommandRequest {
    pub fn new(command: Command, system: &str) -> Self {
        CommandRequest { command, system: system.to_owned(), options: RunOptions::default() }
    }
}

/// An early exit: code and diagnostic.
struct Abort(i32, String);

type Step<T> = Result<T, Abort>;

fn input(msg: impl Into<String>) -> Abort {
    Abort(EXIT_INPUT, msg.into())
}

fn singular(msg: impl Into<String>) -> Abort {
    Abort(EXIT_SINGULAR, msg.into())
}

impl From<McframeError> for Abort {
    fn from(e: McframeError) -> Self {
        singular(e.to_string())
    }
}

/// A loaded system and whether it is the shipped builtin of that name.
struct Loaded {
    system: BuiltinSystem,
    builtin: bool,
}

fn from_source(text: &str) -> Result<BuiltinSystem, ParseError> {
    let spec = parse_system(text)?;
    let frame = if spec.u.is_some() { FrameKind::Sl2 } else { FrameKind::FieldOnly };
    Ok(BuiltinSystem { spec, frame, printed: Vec::new() })
}

fn load(req: &CommandRequest) -> Step<Loaded> {
    if req.command != Command::CheckFile {
        if let Ok(system) = builtin(&req.system) {
            return Ok(Loaded { system, builtin: true });
        }
    }
    let path = Path::new(&req.system);
    let text = std::fs::read_to_string(path).map_err(|e| {
        if req.command != Command::CheckFile && !path.exists() {
            input(format!("`{}` is neither a builtin ({}) nor a readable file", req.system, BUILTIN_NAMES.join(", ")))
        } else {
            input(format!("cannot read {}: {e}", req.system))
        }
    })?;
    let system = from_source(&text).map_err(|e| input(format!("{}: {e}", req.system)))?;
    Ok(Loaded { system, builtin: false })
}

/// Declared integrals left after the `eps` branch filter.
fn select_integrals(spec: &SystemSpec, eps: Option<i8>) -> Vec<(String, LogIntegral)> {
    let drop = match eps {
        Some(1) => Some("_neg"),
        Some(-1) => Some("_pos"),
        _ => None,
    };
    spec.log_integrals().into_iter().filter(|(n, _)| drop.is_none_or(|s| !n.ends_with(s))).collect()
}

fn strings(v: &VectorField3) -> [String; 3] {
    v.components.each_ref().map(ToString::to_string)
}

fn frame_section(spec: &SystemSpec) -> FrameSection {
    FrameSection {
        v: strings(&spec.v_field()),
        u: spec.u_field().map(|u| strings(&u)),
        w: spec.w_field().map(|w| strings(&w)),
    }
}

fn forms_section(frame: &Sl2Frame) -> FormsSection {
    let (potential, scale) = match potential_from_gamma(frame) {
        Ok(p) => (Some(strings(&p.a)), Some(p.scale.to_string())),
        Err(_) => (None, None),
    };
    FormsSection {
        alpha: frame.alpha.to_string(),
        beta: frame.beta.to_string(),
        gamma: frame.gamma.to_string(),
        potential,
        scale,
    }
}

fn sl2_frame(spec: &SystemSpec) -> Step<Sl2Frame> {
    let (Some(u), Some(w)) = (spec.u_field(), spec.w_field()) else {
        return Err(singular(format!("system `{}` declares no companion fields u, w; there is no frame", spec.name)));
    };
    Ok(Sl2Frame::new(spec.v_field(), u, w)?)
}

fn parse_option(label: &str, text: &str, spec: &SystemSpec) -> Step<RationalFunction> {
    parse_rational(text, &spec.chart).map_err(|e| input(format!("--{label}: {e}")))
}

/// `ι_v dH = 0` for integrals checked without a bi-Hamiltonian pairing.
fn integral_checks(v: &VectorField3, integrals: &[(String, LogIntegral)]) -> Step<VerificationReport> {
    let mut r = VerificationReport::default();
    for (name, h) in integrals {
        let dh = integral_differential(h).map_err(|e| input(e.to_string()))?;
        let KForm::Zero(flow) = interior_product(v, &dh).map_err(|e| input(e.to_string()))? else {
            unreachable!("contraction of a one-form")
        };
        r.push(Check::zero(&format!("integral.{name}"), &format!("i_v d{name} = 0"), flow));
    }
    Ok(r)
}

/// Pairs the first integral with each of the others; each pair is its own
/// bi-Hamiltonian structure.
fn bihamiltonian_checks(
    v: &VectorField3,
    m: &RationalFunction,
    integrals: &[(String, LogIntegral)],
) -> Step<VerificationReport> {
    let mut r = VerificationReport::default();
    if integrals.len() < 2 {
        r.extend(integral_checks(v, integrals)?);
        return Ok(r);
    }
    let (n1, h1) = &integrals[0];
    for (i, (n2, h2)) in integrals[1..].iter().enumerate() {
        let mut pair = bihamiltonian_verify(v, m, (n1, h1), (n2, h2))?;
        if i > 0 {
            let seen = format!("integral.{n1}");
            pair.checks.retain(|c| c.name != seen && c.name != "bihamiltonian.div_Mv");
        }
        r.extend(pair);
    }
    Ok(r)
}

fn rename(mut r: VerificationReport, from: &str, to: &str) -> VerificationReport {
    for c in &mut r.checks {
        if let Some(rest) = c.name.strip_prefix(from) {
            c.name = format!("{to}{rest}");
        }
    }
    r
}

/// Everything `verify` computes symbolically, in report order.
struct Verified {
    report: VerificationReport,
    frame: Option<Sl2Frame>,
}

fn symbolic_checks(doc: &mut ReportDocument, loaded: &Loaded, opts: &RunOptions) -> Step<Verified> {
    let sys = &loaded.system;
    let spec = &sys.spec;
    let integrals = select_integrals(spec, opts.eps);
    let mut report = VerificationReport::new(&spec.name);
    doc.frame = Some(frame_section(spec));
    let mut frame = None;
    match &sys.frame {
        FrameKind::Sl2 => {
            let f = sl2_frame(spec)?;
            report.extend(frame_suite(&spec.name, &f));
            if let Some(hint) = spec.multiplier_hint() {
                report.push(Check::zero("multiplier.declared", "declared multiplier = computed M", &hint - &f.m));
            }
            match grading_check(&f, [1, 2, 3]) {
                Ok(g) => report.extend(g),
                Err(e) => report.notes.push(e.to_string()),
            }
            report.extend(bihamiltonian_checks(&f.v, &f.m, &integrals)?);
            let rho = opts.rho.as_deref().map(|t| parse_option("rho", t, spec)).transpose()?;
            if let Some(rho) = &rho {
                let (a, b, g) = conformal_transform(&f.alpha, &f.beta, &f.gamma, rho)?;
                let mc = verify_maurer_cartan(&a, &b, &g);
                report.extend(rename(mc, "maurer_cartan.", "conformal."));
                let KForm::Zero(pair) = interior_product(&f.v, &b).map_err(|e| input(e.to_string()))? else {
                    unreachable!("contraction of a one-form")
                };
                report.notes.push(format!("conformal: i_v(rho beta) = {pair}"));
            }
            if let Some(text) = &opts.f {
                let fv = parse_option("f", text, spec)?;
                let rho = rho.unwrap_or_else(|| RationalFunction::one(&spec.chart));
                let s = sigma_residual(&f.alpha, &f.gamma, &f.beta, &rho, &fv)?;
                let gap = &(&s.direct - &s.factored) - &s.correction;
                report.push(Check::zero(
                    "sigma.decomposition",
                    "sigma^d sigma = a^(df - beta)^gamma - f dlog(rho)^alpha^gamma",
                    gap,
                ));
                report.notes.push(if s.direct.is_zero() {
                    "sigma^d sigma = 0: sigma is integrable".to_owned()
                } else {
                    format!("sigma^d sigma = {}: sigma is not integrable", s.direct)
                });
            }
            doc.multiplier = Some(f.m.to_string());
            doc.forms = Some(forms_section(&f));
            frame = Some(f);
        }
        FrameKind::Heisenberg(hf) => {
            report.extend(heisenberg_verify(hf));
            report.extend(integral_checks(&spec.v_field(), &integrals)?);
            doc.multiplier = Some(hf.multiplier().to_string());
        }
        FrameKind::FieldOnly => {
            let v = spec.v_field();
            if loaded.builtin && spec.name == "dh_classic" {
                report.extend(dh_reduction_check());
            }
            match spec.multiplier_hint() {
                Some(m) => {
                    report.extend(bihamiltonian_checks(&v, &m, &integrals)?);
                    doc.multiplier = Some(m.to_string());
                }
                None => report.extend(integral_checks(&v, &integrals)?),
            }
            if report.checks.is_empty() {
                return Err(singular(format!(
                    "system `{}` has no frame, integrals or multiplier; nothing to verify",
                    spec.name
                )));
            }
        }
    }
    if let Some(f) = &frame {
        if !sys.printed.is_empty() {
            let lookup = |name: &str| match name {
                "alpha" => f.alpha.as_vector(),
                "beta" => f.beta.as_vector(),
                "gamma" | "A" => f.gamma.as_vector(),
                _ => None,
            };
            doc.concordance = concordance(&sys.printed, lookup, &f.m);
        }
    }
    Ok(Verified { report, frame })
}

fn derive(doc: &mut ReportDocument, loaded: &Loaded) -> Step<()> {
    let spec = &loaded.system.spec;
    let f = sl2_frame(spec)?;
    doc.frame = Some(frame_section(spec));
    doc.multiplier = Some(f.m.to_string());
    let forms = forms_section(&f);
    if forms.potential.is_none() {
        doc.notes.push("curl of the covector of gamma is not a constant multiple of M v".into());
    }
    doc.forms = Some(forms);
    Ok(())
}

fn verify(doc: &mut ReportDocument, loaded: &Loaded, opts: &RunOptions) -> Step<()> {
    let Verified { report, frame } = symbolic_checks(doc, loaded, opts)?;
    doc.add_report(&report);
    doc.numeric.samples = oracle::sample_checks(&report.checks, &opts.sample_options(), &mut doc.notes);
    if let Some(f) = &frame {
        doc.numeric.finite_differences = oracle::fd_checks(f, opts.seed, &mut doc.notes);
    }
    Ok(())
}

fn sample(doc: &mut ReportDocument, loaded: &Loaded, opts: &RunOptions) -> Step<()> {
    let Verified { report, .. } = symbolic_checks(doc, loaded, opts)?;
    let chosen: Vec<Check> = match &opts.check {
        Some(name) => match report.get(name) {
            Some(c) => vec![c.clone()],
            None => {
                let known: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
                return Err(input(format!("no check named `{name}`; available: {}", known.join(", "))));
            }
        },
        None => report.checks.clone(),
    };
    doc.concordance.clear();
    let mut picked = VerificationReport::new(&report.system);
    chosen.iter().cloned().for_each(|c| picked.push(c));
    doc.add_report(&picked);
    doc.numeric.samples = oracle::sample_checks(&chosen, &opts.sample_options(), &mut doc.notes);
    Ok(())
}

fn integrate(doc: &mut ReportDocument, loaded: &Loaded, opts: &RunOptions) -> Step<()> {
    let spec = &loaded.system.spec;
    doc.frame = Some(frame_section(spec));
    let integrals = select_integrals(spec, opts.eps);
    let section = oracle::integrate(&spec.v_field(), &integrals, opts, &mut doc.notes)
        .map_err(|e| singular(e.to_string()))?;
    doc.numeric.integration = Some(section);
    Ok(())
}

fn validate(opts: &RunOptions) -> Step<()> {
    if let Some(e) = opts.eps {
        if e != 1 && e != -1 {
            return Err(input(format!("--eps must be +1 or -1, got {e}")));
        }
    }
    if opts.points == 0 {
        return Err(input("--points must be at least 1"));
    }
    if !(opts.h > 0.0 && opts.h.is_finite()) {
        return Err(input(format!("--h must be positive, got {}", opts.h)));
    }
    if !(opts.t >= 0.0 && opts.t.is_finite()) {
        return Err(input(format!("--t must be non-negative, got {}", opts.t)));
    }
    if opts.from.iter().any(|c| !c.is_finite()) {
        return Err(input("--from must be finite"));
    }
    if opts.sample_box.0 >= opts.sample_box.1 {
        return Err(input("sampling box must have lo < hi"));
    }
    Ok(())
}

/// Runs one command. The returned document carries the exit code.
pub fn run(req: &CommandRequest) -> ReportDocument {
    let mut doc = ReportDocument::new(req.command.name(), &req.system);
    let outcome = validate(&req.options).and_then(|()| load(req)).and_then(|loaded| {
        doc.system = loaded.system.spec.name.clone();
        match req.command {
            Command::Derive => derive(&mut doc, &loaded),
            Command::Verify | Command::CheckFile => verify(&mut doc, &loaded, &req.options),
            Command::Sample => sample(&mut doc, &loaded, &req.options),
            Command::Integrate => integrate(&mut doc, &loaded, &req.options),
        }
    });
    doc.exit_status = match outcome {
        Ok(()) if doc.checks_hold() && doc.numeric.consistent() => EXIT_OK,
        Ok(()) => EXIT_CHECK_FAILED,
        Err(Abort(code, msg)) => {
            doc.error = Some(msg);
            code
        }
    };
    doc
}

/// Parses and verifies `.sys` source text directly.
pub fn verify_source(source: &str, options: &RunOptions) -> ReportDocument {
    let mut doc = ReportDocument::new(Command::CheckFile.name(), "");
    let outcome = validate(options)
        .and_then(|()| from_source(source).map_err(|e| input(e.to_string())))
        .and_then(|system| {
            doc.system = system.spec.name.clone();
            verify(&mut doc, &Loaded { system, builtin: false }, options)
        });
    doc.exit_status = match outcome {
        Ok(()) if doc.checks_hold() && doc.numeric.consistent() => EXIT_OK,
        Ok(()) => EXIT_CHECK_FAILED,
        Err(Abort(code, msg)) => {
            doc.error = Some(msg);
            code
        }
    };
    doc
}
