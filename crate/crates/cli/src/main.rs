use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bgg_core::category::{lattice_points, VermaVector};
use bgg_core::gaussnorm::{log_norm, NormParam};
use bgg_core::harish::{central_character, hc_psi, linkage_classes};
use bgg_core::rational::{fmt_q, q};
use bgg_core::selftest::{self, SelftestConfig};
use bgg_core::{CartanMatrixInput, Category, Convention, LieAlgebra, RootSystem, UEAElement, Weight};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bgg", version, about = "Exact computations in BGG category O")]
struct Cli {
    /// Emit JSON instead of a plain-text table.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for weight-space computations (0 = all cores).
    #[arg(long, global = true, env = "BGG_WORKERS", default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SystemArgs {
    /// Root system label: A<n>, B<n>, C<n>, D<n>, E6-E8, F4, G2.
    #[arg(long = "type", value_name = "LABEL", conflicts_with = "cartan", required_unless_present = "cartan")]
    label: Option<String>,

    /// JSON file of the form {"cartan": [[2,-1],[-1,2]]}.
    #[arg(long, value_name = "PATH")]
    cartan: Option<PathBuf>,

    /// Truncation depth (height of ν) for depth-bounded computations.
    #[arg(long, default_value_t = 6)]
    depth: usize,

    #[arg(long, value_enum, default_value_t = ConventionArg::Strict)]
    convention: ConventionArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ConventionArg {
    /// ⟨λ+ρ, α̌⟩ is never a positive integer
    Strict,
    /// ⟨λ+ρ, α̌⟩ is never a nonnegative integer
    Paper,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Strict => Convention::Strict,
            ConventionArg::Paper => Convention::Paper,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots, coroots and Weyl group order.
    Roots(SystemArgs),
    /// Orbit of a weight under the dot (default) or linear action.
    WeylOrbit {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        /// Use the linear action instead of the dot action.
        #[arg(long)]
        linear: bool,
    },
    /// Kostant partition function P(ν), ν in simple-root coordinates.
    Kostant {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        nu: ::std::vec::Vec<i64>,
    },
    /// Weight multiplicities of M(λ), either at μ or for every ν up to the depth.
    VermaMult {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Option<Weight>,
    },
    /// χ_λ(Ω) for the Casimir Ω and its twisted projection ψ(Ω).
    CentralChar {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Partition of weights into dot orbits. Separate weights with ';' or repeat the flag.
    Linked {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, value_delimiter = ';', required = true, allow_hyphen_values = true)]
        weights: Vec<Weight>,
    },
    /// Log Gauss norm of an element of U(g).
    Norm {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_name = "S", allow_hyphen_values = true)]
        log_radius: String,
        /// PBW element as JSON: [{"exps":[...],"coef":"p/q"}, ...].
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        element: Option<String>,
        /// Product of basis elements, by basis index, in the given order.
        #[arg(long, value_parser = parse_indices)]
        word: Option<::std::vec::Vec<usize>>,
    },
    /// Gram matrix of the contravariant form on the weight space ν.
    Shapovalov {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        nu: ::std::vec::Vec<i64>,
        /// Evaluate at λ; without it the entries are printed as polynomials.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Option<Weight>,
    },
    /// Basis of vectors in M(λ)_{λ−ν} killed by every simple raising operator.
    MaximalVectors {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        nu: ::std::vec::Vec<i64>,
    },
    /// Decomposition matrix [M(λ_i) : L(λ_j)] of an integral block.
    Decomp {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Decomposition, projective filtration and Cartan matrices of a block.
    Block {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Only the structure-constant and Kostant checks.
        #[arg(long)]
        fast: bool,
        /// Restrict the type-parametric checks to these labels.
        #[arg(long = "type", value_delimiter = ',')]
        types: Vec<String>,
    },
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    Weight::parse(s).map_err(|e| e.to_string())
}

fn parse_nu(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

enum Failure {
    Domain(String),
    Internal(String),
}

impl From<bgg_core::Error> for Failure {
    fn from(e: bgg_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CmdResult = Result<Output, Failure>;

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

fn root_system(sys: &SystemArgs) -> Result<Arc<RootSystem>, Failure> {
    let rs = match (&sys.label, &sys.cartan) {
        (Some(label), _) => RootSystem::from_label(label)?,
        (None, Some(path)) => {
            let raw = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            let input: CartanMatrixInput =
                serde_json::from_str(&raw).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            RootSystem::build(&input)?
        }
        (None, None) => unreachable!("clap requires --type or --cartan"),
    };
    Ok(Arc::new(rs))
}

fn algebra(sys: &SystemArgs) -> Result<Arc<LieAlgebra>, Failure> {
    Ok(Arc::new(LieAlgebra::new(root_system(sys)?)?))
}

fn category(sys: &SystemArgs) -> Result<Category, Failure> {
    Ok(Category::new(algebra(sys)?))
}

/// Bare JSON integer, or a decimal string past the u64 range.
fn count(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn fmt_vec<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn fmt_matrix<T: ToString>(m: &[Vec<T>]) -> String {
    m.iter().map(|row| format!("  {}", fmt_vec(row))).collect::<Vec<_>>().join("\n")
}

fn verma_string(alg: &LieAlgebra, v: &VermaVector) -> String {
    let mut u = UEAElement::zero(alg.dim());
    for (a, c) in &v.0 {
        let mut exps = vec![0u32; alg.dim()];
        for (k, &e) in a.iter().enumerate() {
            exps[alg.y_index(k)] = e;
        }
        u.add_term(bgg_core::Monomial::new(exps), c.clone());
    }
    format!("{} v", alg.format_element(&u))
}

fn roots(sys: &SystemArgs) -> CmdResult {
    let rs = root_system(sys)?;
    let positive: Vec<Value> = (0..rs.num_positive())
        .map(|k| json!({"root": rs.positive_roots()[k], "coroot": rs.coroot(k)}))
        .collect();
    let mut text = format!(
        "rank {}, {} positive roots, |W| = {}\nhighest root {}\n",
        rs.rank(),
        rs.num_positive(),
        rs.weyl_order(),
        fmt_vec(rs.highest_root())
    );
    for k in 0..rs.num_positive() {
        text += &format!("{}  coroot {}\n", fmt_vec(&rs.positive_roots()[k]), fmt_vec(rs.coroot(k)));
    }
    Ok(Output {
        text,
        json: json!({
            "rank": rs.rank(),
            "cartan": rs.cartan(),
            "num_positive": rs.num_positive(),
            "weyl_order": rs.weyl_order(),
            "highest_root": rs.highest_root(),
            "positive_roots": positive,
        }),
    })
}

fn weyl_orbit(sys: &SystemArgs, lambda: &Weight, linear: bool) -> CmdResult {
    let rs = root_system(sys)?;
    rs.check_weight(lambda)?;
    let mut pairs: Vec<(Weight, Vec<usize>)> = Vec::new();
    for w in rs.try_weyl_group()? {
        let image = if linear { w.apply(lambda) } else { rs.dot_action(w, lambda) };
        if !pairs.iter().any(|(m, _)| *m == image) {
            pairs.push((image, w.word.iter().map(|i| i + 1).collect()));
        }
    }
    let ordered = rs.block_ordering(pairs.iter().map(|(m, _)| m.clone()).collect());
    let rows: Vec<(Weight, Vec<usize>)> = ordered
        .into_iter()
        .map(|m| {
            let word = pairs.iter().find(|(x, _)| *x == m).unwrap().1.clone();
            (m, word)
        })
        .collect();
    let text = rows
        .iter()
        .map(|(m, word)| format!("{m}  w = s{}", if word.is_empty() { "()".into() } else { fmt_vec(word) }))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({
        "action": if linear { "linear" } else { "dot" },
        "orbit": rows.iter().map(|(m, word)| json!({"weight": m, "word": word})).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn kostant(sys: &SystemArgs, nu: &[i64]) -> CmdResult {
    let rs = root_system(sys)?;
    if nu.len() != rs.rank() {
        return Err(bgg_core::Error::Dimension { expected: rs.rank(), got: nu.len() }.into());
    }
    let p = rs.kostant(nu);
    Ok(Output {
        text: p.to_string(),
        json: json!({"nu": nu, "kostant": count(p)}),
    })
}

fn verma_mult(sys: &SystemArgs, lambda: &Weight, mu: Option<&Weight>) -> CmdResult {
    let rs = root_system(sys)?;
    rs.check_weight(lambda)?;
    let antidominant = rs.is_antidominant(lambda, sys.convention.into());
    if let Some(mu) = mu {
        rs.check_weight(mu)?;
        let m = rs
            .difference_in_root_lattice(lambda, mu)
            .map_or(0, |nu| rs.kostant(&nu));
        return Ok(Output {
            text: m.to_string(),
            json: json!({"lambda": lambda, "mu": mu, "multiplicity": count(m)}),
        });
    }
    let rows: Vec<(Vec<i64>, u128)> = lattice_points(rs.rank(), sys.depth)
        .into_iter()
        .map(|nu| {
            let p = rs.kostant(&nu);
            (nu, p)
        })
        .collect();
    let mut text = format!("M({lambda}), antidominant: {antidominant}\n");
    for (nu, p) in &rows {
        text += &format!("{}  {}\n", lambda.sub(&rs.root_to_weight(nu)), p);
    }
    Ok(Output {
        text,
        json: json!({
            "lambda": lambda,
            "antidominant": antidominant,
            "depth": sys.depth,
            "weights": rows.iter().map(|(nu, p)| json!({
                "nu": nu,
                "weight": lambda.sub(&rs.root_to_weight(nu)),
                "multiplicity": count(*p),
            })).collect::<Vec<_>>(),
        }),
    })
}

fn central_char(sys: &SystemArgs, lambda: &Weight) -> CmdResult {
    let g = algebra(sys)?;
    g.root_system().check_weight(lambda)?;
    let omega = g.casimir()?;
    let chi = central_character(&g, lambda, &omega)?;
    let psi = hc_psi(&g, &omega)?;
    Ok(Output {
        text: format!("chi(Omega) = {}\npsi(Omega) = {}", fmt_q(&chi), psi),
        json: json!({"lambda": lambda, "casimir_value": fmt_q(&chi), "psi": psi.to_string()}),
    })
}

fn linked(sys: &SystemArgs, weights: &[Weight]) -> CmdResult {
    let rs = root_system(sys)?;
    for w in weights {
        rs.check_weight(w)?;
    }
    rs.try_weyl_group()?;
    let classes = linkage_classes(&rs, weights);
    let json = json!(classes);
    Ok(Output {
        text: serde_json::to_string(&json).expect("serializable"),
        json,
    })
}

fn norm(sys: &SystemArgs, prime: u64, s: &str, element: Option<&str>, word: Option<&[usize]>) -> CmdResult {
    let g = algebra(sys)?;
    let np = NormParam::parse(prime, s)?;
    let u = match (element, word) {
        (Some(raw), _) => {
            let raw = match raw.strip_prefix('@') {
                Some(path) => fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{path}: {e}")))?,
                None => raw.to_string(),
            };
            let u: UEAElement = serde_json::from_str(&raw).map_err(|e| Failure::Domain(format!("element: {e}")))?;
            if u.is_zero() {
                UEAElement::zero(g.dim())
            } else if u.dim() != g.dim() {
                return Err(bgg_core::Error::Dimension { expected: g.dim(), got: u.dim() }.into());
            } else {
                u
            }
        }
        (None, Some(word)) => {
            if let Some(&bad) = word.iter().find(|&&i| i >= g.dim()) {
                return Err(Failure::Domain(format!("basis index {bad} out of range 0..{}", g.dim())));
            }
            g.word(word)
        }
        (None, None) => unreachable!("clap requires --element or --word"),
    };
    let n = log_norm(&u, &np);
    let approx = n.approx_norm(prime);
    Ok(Output {
        text: format!(
            "element = {}\nlog_p norm = {n}\nnorm ~ {approx}",
            g.format_element(&u)
        ),
        json: json!({
            "prime": prime,
            "log_radius": fmt_q(np.log_radius()),
            "element": u,
            "log_norm": n,
            "norm_approx": approx,
        }),
    })
}

fn shapovalov(sys: &SystemArgs, nu: &[i64], lambda: Option<&Weight>) -> CmdResult {
    let cat = category(sys)?;
    let rs = cat.root_system();
    if nu.len() != rs.rank() {
        return Err(bgg_core::Error::Dimension { expected: rs.rank(), got: nu.len() }.into());
    }
    let form = cat.shapovalov_form(nu);
    let basis: Vec<String> = form
        .basis
        .iter()
        .map(|a| verma_string(cat.algebra(), &VermaVector(std::iter::once((a.clone(), q(1))).collect())))
        .collect();
    match lambda {
        None => {
            let entries: Vec<Vec<String>> = form.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            let text = format!("basis: {}\n{}", basis.join(", "), entries.iter().map(|r| r.join(" | ")).collect::<Vec<_>>().join("\n"));
            Ok(Output {
                text,
                json: json!({"nu": nu, "basis": basis, "entries": entries}),
            })
        }
        Some(lambda) => {
            let m = cat.shapovalov_matrix(lambda, nu)?;
            let rank = cat.simple_weight_mult(lambda, nu)?;
            let entries: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
            Ok(Output {
                text: format!("basis: {}\nrank {} of {}\n{}", basis.join(", "), rank, basis.len(), fmt_matrix(&entries)),
                json: json!({"nu": nu, "lambda": lambda, "basis": basis, "entries": entries, "rank": rank}),
            })
        }
    }
}

fn maximal_vectors(sys: &SystemArgs, lambda: &Weight, nu: &[i64]) -> CmdResult {
    let cat = category(sys)?;
    let rs = cat.root_system();
    if nu.len() != rs.rank() {
        return Err(bgg_core::Error::Dimension { expected: rs.rank(), got: nu.len() }.into());
    }
    let vs = cat.maximal_vectors(lambda, nu)?;
    let strings: Vec<String> = vs.iter().map(|v| verma_string(cat.algebra(), v)).collect();
    let text = if strings.is_empty() { "none".to_string() } else { strings.join("\n") };
    Ok(Output {
        text,
        json: json!({"lambda": lambda, "nu": nu, "count": strings.len(), "vectors": strings}),
    })
}

fn decomp(sys: &SystemArgs, lambda: &Weight) -> CmdResult {
    let cat = category(sys)?;
    let dm = cat.decomposition_matrix(lambda)?;
    let class: Vec<String> = dm.class.iter().map(Weight::to_string).collect();
    Ok(Output {
        text: format!("class (block order): {}\nD =\n{}", class.join(" "), fmt_matrix(&dm.entries)),
        json: serde_json::to_value(&dm).expect("serializable"),
    })
}

fn block(sys: &SystemArgs, lambda: &Weight) -> CmdResult {
    let cat = category(sys)?;
    let r = cat.block_report(lambda)?;
    let class: Vec<String> = r.class.iter().map(Weight::to_string).collect();
    let text = format!(
        "class (block order): {}\nchi(Omega) = {}\nD =\n{}\nprojective filtration =\n{}\nC =\n{}",
        class.join(" "),
        fmt_q(&r.casimir_value),
        fmt_matrix(&r.decomposition),
        fmt_matrix(&r.projective_filtration),
        fmt_matrix(&r.cartan)
    );
    Ok(Output {
        text,
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

/// Writes one block of output; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn run_selftest(seed: u64, fast: bool, types: Vec<String>, json_mode: bool) -> ExitCode {
    let cfg = SelftestConfig {
        seed,
        types: if types.is_empty() { None } else { Some(types) },
        fast,
    };
    let results = selftest::run(&cfg);
    let all = results.iter().all(|r| r.passed);
    if json_mode {
        let v = json!({"seed": seed, "passed": all, "criteria": results});
        emit(&serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
        text += &format!("{}/{} criteria passed", results.iter().filter(|r| r.passed).count(), results.len());
        emit(&text);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .expect("worker pool configured once");
    }
    let result = match &cli.command {
        Command::Roots(sys) => roots(sys),
        Command::WeylOrbit { sys, weight, linear } => weyl_orbit(sys, weight, *linear),
        Command::Kostant { sys, nu } => kostant(sys, nu),
        Command::VermaMult { sys, weight, mu } => verma_mult(sys, weight, mu.as_ref()),
        Command::CentralChar { sys, weight } => central_char(sys, weight),
        Command::Linked { sys, weights } => linked(sys, weights),
        Command::Norm { sys, prime, log_radius, element, word } => {
            norm(sys, *prime, log_radius, element.as_deref(), word.as_deref())
        }
        Command::Shapovalov { sys, nu, weight } => shapovalov(sys, nu, weight.as_ref()),
        Command::MaximalVectors { sys, weight, nu } => maximal_vectors(sys, weight, nu),
        Command::Decomp { sys, weight } => decomp(sys, weight),
        Command::Block { sys, weight } => block(sys, weight),
        Command::Selftest { seed, fast, types } => return run_selftest(*seed, *fast, types.clone(), cli.json),
    };
    match result {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                emit(out.text.trim_end());
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
