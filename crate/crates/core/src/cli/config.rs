use crate::eigen::SolverOptions;
use crate::error::{Error, Result};
use crate::lattice::{ConeKind, ConeSpec, DiagonalGenerator, SpectralField};
use crate::mild::{graded_gamma, KernelRule, TimeGrid};
use crate::problem::{
    CustomMap, LambdaMode, NonlinearitySpec, NonlocalSpec, ProblemSpec, TimeFn, DEFAULT_AUDIT_FLOOR,
    DEFAULT_POS_TOL,
};
use crate::specfun::{FracOrder, MLEvalConfig};
use ini::Ini;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Lowercase hex digest.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Keys of one section; every key must be consumed.
struct Section {
    name: &'static str,
    entries: BTreeMap<String, String>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str, default: T) -> Result<T> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| cfg_err(format!("[{}] {key}: cannot parse '{v}'", self.name))),
        }
    }

    fn opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| cfg_err(format!("[{}] {key}: cannot parse '{v}'", self.name))),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(k) = self.entries.keys().next() {
            return Err(cfg_err(format!("unknown key '{k}' in section [{}]", self.name)));
        }
        Ok(())
    }
}

const SECTIONS: [&str; 6] = ["problem", "nonlinearity", "nonlocal", "cone", "solver", "output"];

fn split_sections(text: &str) -> Result<BTreeMap<String, BTreeMap<String, String>>> {
    let ini = Ini::load_from_str_noescape(text).map_err(|e| cfg_err(format!("parse error: {e}")))?;
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (name, props) in ini.iter() {
        let Some(name) = name else {
            if let Some((k, _)) = props.iter().next() {
                return Err(cfg_err(format!("key '{k}' appears before any section")));
            }
            continue;
        };
        if !SECTIONS.contains(&name) {
            return Err(cfg_err(format!("unknown section [{name}]")));
        }
        let sec = out.entry(name.to_string()).or_default();
        for (k, v) in props.iter() {
            if sec.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(cfg_err(format!("duplicate key '{k}' in [{name}]")));
            }
        }
    }
    Ok(out)
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| cfg_err(format!("{what}: '{p}' is not a number")))
        })
        .collect()
}

/// Parses `const:c`, `exp:rate[:amp]`, `cos2:freq[:amp]`, `affine:offset:slope`
/// or a bare number.
pub fn parse_time_fn(s: &str) -> Result<TimeFn> {
    let s = s.trim();
    if let Ok(c) = s.parse::<f64>() {
        return Ok(TimeFn::Const(c));
    }
    let (head, rest) = s.split_once(':').ok_or_else(|| cfg_err(format!("bad time function '{s}'")))?;
    let v = numbers(rest, s)?;
    let f = match (head, v.as_slice()) {
        ("const", [c]) => TimeFn::Const(*c),
        ("exp", [rate]) => TimeFn::Exp { amp: 1.0, rate: *rate },
        ("exp", [rate, amp]) => TimeFn::Exp { amp: *amp, rate: *rate },
        ("cos2", [freq]) => TimeFn::CosSq { amp: 1.0, freq: *freq },
        ("cos2", [freq, amp]) => TimeFn::CosSq { amp: *amp, freq: *freq },
        ("affine", [offset, slope]) => TimeFn::Affine {
            offset: *offset,
            slope: *slope,
        },
        _ => return Err(cfg_err(format!("bad time function '{s}'"))),
    };
    if !f.is_finite() {
        return Err(cfg_err(format!("time function '{s}' is not finite")));
    }
    Ok(f)
}

/// Parses `e1`, `sin:n[:amp]` (amp·sin(nx)) or `mode:n[:amp]` (amp·ê_n).
pub fn parse_field(s: &str, modes: usize) -> Result<SpectralField> {
    let s = s.trim();
    if s == "e1" {
        return Ok(SpectralField::e1(modes));
    }
    let (head, rest) = s.split_once(':').ok_or_else(|| cfg_err(format!("bad field '{s}'")))?;
    let v = numbers(rest, s)?;
    let (n, amp) = match v.as_slice() {
        [n] => (*n, 1.0),
        [n, a] => (*n, *a),
        _ => return Err(cfg_err(format!("bad field '{s}'"))),
    };
    if n.fract() != 0.0 || n < 1.0 || n as usize > modes {
        return Err(cfg_err(format!("field '{s}': mode index must be an integer in 1..={modes}")));
    }
    match head {
        "sin" => Ok(SpectralField::sine(modes, n as usize, amp)),
        "mode" => Ok(SpectralField::mode(modes, n as usize, amp)),
        _ => Err(cfg_err(format!("bad field '{s}'"))),
    }
}

/// Parses a comma-separated list.
fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| cfg_err(format!("{what}: cannot parse '{}'", p.trim())))
        })
        .collect()
}

/// Built-in pointwise maps available as `kind = custom`.
fn parse_custom(s: &str) -> Result<CustomMap> {
    let (head, rest) = s.split_once(':').ok_or_else(|| cfg_err(format!("bad custom map '{s}'")))?;
    let v = numbers(rest, s)?;
    match (head, v.as_slice()) {
        ("power", [p]) | ("power", [p, _]) => {
            let (p, c) = (*p, v.get(1).copied().unwrap_or(1.0));
            Ok(CustomMap::new(s.to_string(), move |_, _, u| c * u.max(0.0).powf(p)))
        }
        ("logistic", [r]) => {
            let r = *r;
            Ok(CustomMap::new(s.to_string(), move |_, _, u| r * u * (1.0 - u)))
        }
        _ => Err(cfg_err(format!("bad custom map '{s}' (use power:p[:c] or logistic:r)"))),
    }
}

/// Parsed and validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// SHA-256 of the configuration text.
    pub sha256: String,
    pub problem: ProblemSpec,
    /// `α` values for `sweep`; defaults to `[problem.alpha]`.
    pub alphas: Vec<f64>,
    pub t0: f64,
    pub solver: SolverOptions,
    pub seed: u64,
    pub samples: usize,
    pub run_audit: bool,
    /// Also solve with doubled `N` and `M` and report the `λ` gap.
    pub refine: bool,
    pub compare_cold: bool,
    pub convergence_steps: Vec<usize>,
    pub output_dir: Option<PathBuf>,
    pub precision: usize,
}

impl RunConfig {
    /// The fractional heat instance with default solver settings.
    pub fn heat_default() -> Result<Self> {
        Self::parse("")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = split_sections(text)?;
        let mut sec = |name: &'static str| Section {
            name,
            entries: raw.remove(name).unwrap_or_default(),
        };
        let (mut p, mut nl, mut nlc, mut cone, mut sol, mut out) = (
            sec("problem"),
            sec("nonlinearity"),
            sec("nonlocal"),
            sec("cone"),
            sec("solver"),
            sec("output"),
        );

        let beta = FracOrder::new(p.parse("beta", 0.5)?).map_err(|e| cfg_err(e.to_string()))?;
        let modes: usize = p.parse("modes", 64)?;
        if modes == 0 {
            return Err(cfg_err("[problem] modes must be >= 1"));
        }
        let steps: usize = p.parse("time_nodes", 256)?;
        let alpha: f64 = p.parse("alpha", 1.0)?;
        let alphas = match p.take("alphas") {
            Some(s) => parse_list(&s, "[problem] alphas")?,
            None => vec![alpha],
        };
        let grid_kind = p.take("grid").unwrap_or_else(|| "uniform".into());
        let gamma: Option<f64> = p.opt("gamma")?;
        let grid = match grid_kind.as_str() {
            "uniform" => {
                if gamma.is_some() {
                    return Err(cfg_err("[problem] gamma requires grid = graded"));
                }
                TimeGrid::uniform(steps)
            }
            "graded" => TimeGrid::graded(steps, gamma.unwrap_or_else(|| graded_gamma(beta))),
            other => return Err(cfg_err(format!("[problem] grid must be uniform or graded, got '{other}'"))),
        }
        .map_err(|e| cfg_err(e.to_string()))?;
        let grid = Arc::new(grid);
        let nodal_points: usize = p.parse("nodal_points", modes + 1)?;
        let kernel_rule = match p.take("kernel").as_deref() {
            None | Some("exact") => KernelRule::Exact,
            Some("folded") => KernelRule::Folded,
            Some(o) => return Err(cfg_err(format!("[problem] kernel must be exact or folded, got '{o}'"))),
        };
        let t0: f64 = p.parse("t0", 1.0)?;
        let lambda_mode = match p.take("lambda").as_deref() {
            None | Some("eigen") => LambdaMode::Eigen,
            Some(v) => LambdaMode::Fixed(
                v.parse()
                    .map_err(|_| cfg_err(format!("[problem] lambda must be 'eigen' or a number, got '{v}'")))?,
            ),
        };
        let ml_target: f64 = p.parse("ml_target", MLEvalConfig::default().target_rel_err)?;
        let convergence_steps = match p.take("convergence_steps") {
            Some(s) => parse_list(&s, "[problem] convergence_steps")?,
            None => vec![32, 64, 128, 256],
        };
        p.finish()?;

        let nonlinearity = match nl.take("kind").as_deref() {
            None | Some("saturating") => {
                let rho = parse_time_fn(&nl.take("rho").unwrap_or_else(|| "exp:1".into()))?;
                let sigma_t = parse_time_fn(&nl.take("sigma_t").unwrap_or_else(|| "cos2:1".into()))?;
                let phi0 = parse_field(&nl.take("phi0").unwrap_or_else(|| "sin:1".into()), modes)?;
                NonlinearitySpec::saturating(rho, sigma_t, phi0, nodal_points)
            }
            Some("zero") => NonlinearitySpec::zero(nodal_points),
            Some("custom") => {
                let map = nl
                    .take("map")
                    .ok_or_else(|| cfg_err("[nonlinearity] kind = custom needs map"))?;
                NonlinearitySpec::custom(parse_custom(&map)?, nodal_points)
            }
            Some(o) => return Err(cfg_err(format!("[nonlinearity] unknown kind '{o}'"))),
        };
        nl.finish()?;

        let nonlocal = match nlc.take("kind").as_deref() {
            None | Some("integral") => NonlocalSpec::Integral {
                omega: parse_time_fn(&nlc.take("omega").unwrap_or_else(|| "const:1".into()))?,
            },
            Some("multipoint") => {
                let pts = nlc
                    .take("points")
                    .ok_or_else(|| cfg_err("[nonlocal] kind = multipoint needs points = t:c, ..."))?;
                let pts = pts
                    .split(',')
                    .map(|p| match numbers(p, "[nonlocal] points")?.as_slice() {
                        [t, c] => Ok((*t, *c)),
                        _ => Err(cfg_err(format!("[nonlocal] bad point '{}'", p.trim()))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                NonlocalSpec::Multipoint(pts)
            }
            Some("periodic") => NonlocalSpec::Periodic,
            Some("fixed") => NonlocalSpec::Fixed(parse_field(
                &nlc.take("u0").ok_or_else(|| cfg_err("[nonlocal] kind = fixed needs u0"))?,
                modes,
            )?),
            Some(o) => return Err(cfg_err(format!("[nonlocal] unknown kind '{o}'"))),
        };
        nlc.finish()?;

        let cone_kind = match cone.take("kind").as_deref() {
            None | Some("e1") => ConeKind::FirstModeBound,
            Some("positive") => ConeKind::Positive,
            Some(o) => return Err(cfg_err(format!("[cone] kind must be e1 or positive, got '{o}'"))),
        };
        let cone_spec = ConeSpec::new(
            cone_kind,
            cone.parse("sigma_cone", 0.1)?,
            modes,
            cone.parse("pos_tol", DEFAULT_POS_TOL)?,
        )
        .map_err(|e| cfg_err(e.to_string()))?;
        cone.finish()?;

        let d = SolverOptions::default();
        let solver = SolverOptions {
            tol: sol.parse("tol", d.tol)?,
            max_iter: sol.parse("max_iter", d.max_iter)?,
            damping: sol.parse("damping", d.damping)?,
            min_damping: sol.parse("min_damping", d.min_damping)?,
            window: sol.parse("window", d.window)?,
        };
        solver.validate().map_err(|e| cfg_err(e.to_string()))?;
        let seed: u64 = sol.parse("seed", 42)?;
        let samples: usize = sol.parse("samples", 100)?;
        let run_audit: bool = sol.parse("audit", true)?;
        let refine: bool = sol.parse("refine", false)?;
        let compare_cold: bool = sol.parse("compare_cold", true)?;
        let audit_floor: f64 = sol.parse("audit_floor", DEFAULT_AUDIT_FLOOR)?;
        sol.finish()?;

        let output_dir = out.take("dir").map(PathBuf::from);
        let precision: usize = out.parse("precision", 17)?;
        if !(1..=17).contains(&precision) {
            return Err(cfg_err("[output] precision must lie in 1..=17"));
        }
        out.finish()?;

        let problem = ProblemSpec {
            beta,
            generator: DiagonalGenerator::dirichlet_laplacian(modes),
            grid,
            nonlinearity,
            nonlocal,
            cone: cone_spec,
            alpha,
            lambda_mode,
            ml_cfg: MLEvalConfig::default().with_target(ml_target),
            kernel_rule,
            audit_floor,
        };
        problem.validate().map_err(|e| cfg_err(e.to_string()))?;
        if alphas.is_empty() || alphas.iter().any(|a| !(*a > 0.0)) || alphas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(cfg_err("[problem] alphas must be positive and strictly increasing"));
        }
        if convergence_steps.is_empty() || convergence_steps.iter().any(|n| *n == 0) {
            return Err(cfg_err("[problem] convergence_steps must be positive"));
        }
        Ok(Self {
            sha256: sha256_hex(text.as_bytes()),
            problem,
            alphas,
            t0,
            solver,
            seed,
            samples,
            run_audit,
            refine,
            compare_cold,
            convergence_steps,
            output_dir,
            precision,
        })
    }
}
