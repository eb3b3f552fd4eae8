//! Command-line front end: every engine behind a subcommand with
//! machine-readable output.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::{One, ToPrimitive};
use serde_json::{json, Value};

use p2coh::chern::{chi_tensor, parse_integral_character, ChernCharacter, SlopeDiscPoint};
use p2coh::cohomology::{
    cohomologically_orthogonal, generic_cohomology, hom_globally_generated,
    orthogonal_lattice_exponent, sufficient_multiple, tensor_globally_generated, CohomologyReport,
    RegionClassifier,
};
use p2coh::correspondence::{
    corresponding_exceptionals, orthogonal_characters, resolution, SignCase,
};
use p2coh::error::Error;
use p2coh::exceptional::{
    decompose, delta_with_order, epsilon, exc_globally_generated, exc_hom_globally_generated,
    locate, mutation_slopes, stability_class, DyadicIndex, ExceptionalSlope, LocateResult,
    StabilityClass, DEFAULT_MAX_ORDER,
};
use p2coh::kronecker::{
    decompose_general, euler_form, exceptional_orbit, general_hom_ext, polystable_multiplicity,
    semistable_exists, KroneckerShape,
};
use p2coh::oracle::{delta_brute_force, kronecker_hom_oracle, OracleConfig};
use p2coh::quadratic::{parse_rational, QuadraticNumber, Rational};

#[derive(Parser)]
#[command(
    name = "p2coh",
    about = "Exact generic cohomology of tensor products of semistable sheaves on the plane",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and ring operations on a Chern character
    Chern {
        /// Character as "r c1 ch2" (torsion: "0 d chi")
        character: String,
        /// Tensor with a second character and report chi
        #[arg(long)]
        tensor: Option<String>,
        /// Twist by a line bundle degree
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
        /// Replace by the dual character
        #[arg(long)]
        dual: bool,
        /// Replace by the Serre dual character
        #[arg(long = "serre-dual")]
        serre_dual: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Data of the exceptional slope with a given dyadic index
    Exceptional {
        /// Dyadic index "p/2^q" (or a rational with power-of-two denominator)
        #[arg(allow_hyphen_values = true)]
        index: String,
        /// Also print the mutation slopes (non-integer slopes only)
        #[arg(long)]
        mutations: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// The stability curve
    #[command(subcommand)]
    Dlp(DlpCommand),
    /// Moduli-space verdict for an integral character
    Stable { character: String },
    /// Resolution data and orthogonal characters of a character
    Correspond {
        character: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kronecker modules: Euler form, orbits, decompositions, hom/ext
    #[command(subcommand)]
    Kronecker(KroneckerCommand),
    /// Generic cohomology of the tensor product of two characters
    Cohomology {
        v: String,
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// CSV region map of the (mu, Delta)-plane for a fixed character
    Regions {
        v: String,
        #[arg(long = "mu-min", allow_hyphen_values = true, default_value = "-1")]
        mu_min: String,
        #[arg(long = "mu-max", allow_hyphen_values = true, default_value = "2")]
        mu_max: String,
        #[arg(long = "delta-min", allow_hyphen_values = true, default_value = "1/2")]
        delta_min: String,
        #[arg(long = "delta-max", allow_hyphen_values = true, default_value = "3")]
        delta_max: String,
        /// Slope grid denominator (exact sampling; no floating grids)
        #[arg(long, default_value_t = 16)]
        denominator: u32,
        /// Discriminant grid denominator (defaults to the slope one)
        #[arg(long = "delta-denominator")]
        delta_denominator: Option<u32>,
    },
    /// Global generation criteria
    #[command(subcommand)]
    Gg(GgCommand),
    /// Cohomological orthogonality and sufficient multiples
    Orthogonal {
        v: String,
        /// With a second character: test the orthogonal pair
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Finite-field and brute-force verification engines
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum DlpCommand {
    /// CSV sample of the curve over a slope range
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        min: String,
        #[arg(long, allow_hyphen_values = true)]
        max: String,
        #[arg(long)]
        denominator: u32,
    },
    /// Curve value at one rational slope
    At {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u32,
    },
    /// Locate the exceptional interval containing a rational slope
    Locate {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u32,
    },
}

#[derive(Subcommand)]
enum KroneckerCommand {
    /// Euler form chi(f, e) of two shapes "N:b,a"
    Euler { f: String, e: String },
    /// The orbit of (0,1) under the standard reflection
    Orbit { n: u32, count: usize },
    /// Whether a general module of the shape is semistable
    Exists { shape: String },
    /// Isotypic decomposition of the general module
    Decompose { shape: String },
    /// Generic hom and ext counts
    Homext { f: String, e: String },
}

#[derive(Subcommand)]
enum GgCommand {
    /// Sheaf-Hom global generation between two moduli characters
    Hom { v: String, w: String },
    /// Tensor-product global generation between two moduli characters
    Tensor { v: String, w: String },
    /// Sheaf-Hom global generation for an exceptional pair (dyadic indices)
    ExcPair {
        #[arg(allow_hyphen_values = true)]
        e: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Global generation of one exceptional bundle (dyadic index)
    Exc {
        #[arg(allow_hyphen_values = true)]
        e: String,
    },
}

#[derive(Args)]
struct OracleFlags {
    #[arg(long, default_value_t = 32003)]
    prime: u64,
    #[arg(long, default_value_t = 5)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Finite-field generic hom dimension between two Kronecker shapes
    KroneckerHom {
        f: String,
        e: String,
        #[command(flatten)]
        flags: OracleFlags,
    },
    /// Brute-force curve value as a finite sup over slopes of bounded order
    Delta {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long = "max-order", default_value_t = 10)]
        max_order: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::NonIntegral(_) | Error::Unsupported(_) => 2,
                Error::NotStable(_) => 3,
                Error::DepthExceeded => 4,
                Error::OracleConfig(_) => 5,
            })
        }
    }
}

// ---- Rendering helpers ----

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

fn rational_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn bigint_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn slope_value(s: &ExceptionalSlope) -> Value {
    json!({
        "index": s.index().to_string(),
        "mu": rational_str(s.mu()),
        "rank": bigint_value(s.rank()),
        "disc": rational_str(s.disc()),
        "half_width": s.half_width().to_string(),
        "order": s.order(),
    })
}

fn report_value(r: &CohomologyReport) -> Value {
    json!({
        "h0": bigint_value(&r.h0),
        "h1": bigint_value(&r.h1),
        "h2": bigint_value(&r.h2),
        "chi": bigint_value(&r.chi),
        "region": r.region.as_str(),
        "special": r.special,
        "requires_divisibility": r.requires_divisibility,
        "sufficient_multiple": r.sufficient_multiple.as_ref().map(bigint_value),
        "notes": r.notes,
    })
}

fn print_report_plain(r: &CohomologyReport) {
    println!("h0 = {}", r.h0);
    println!("h1 = {}", r.h1);
    println!("h2 = {}", r.h2);
    println!("chi = {}", r.chi);
    println!("region = {}", r.region);
    println!("special = {}", r.special);
    println!("requires_divisibility = {}", r.requires_divisibility);
    match &r.sufficient_multiple {
        Some(m) => println!("sufficient_multiple = {m}"),
        None => println!("sufficient_multiple = -"),
    }
    for n in &r.notes {
        println!("note: {n}");
    }
}

fn parse_character(s: &str) -> p2coh::Result<ChernCharacter> {
    s.parse()
}

fn run(cmd: Command) -> p2coh::Result<()> {
    match cmd {
        Command::Chern {
            character,
            tensor,
            twist,
            dual,
            serre_dual,
            format,
        } => {
            let mut v = parse_character(&character)?;
            if let Some(w) = &tensor {
                let w = parse_character(w)?;
                let chi = chi_tensor(&v, &w)?;
                v = v.tensor(&w)?;
                if format == Format::Plain {
                    println!("chi = {chi}");
                }
            }
            if let Some(n) = twist {
                v = v.twist(n);
            }
            if dual {
                v = v.dual()?;
            }
            if serre_dual {
                v = v.serre_dual()?;
            }
            match format {
                Format::Json => {
                    let mut obj = json!({
                        "character": v.to_string(),
                        "integral": v.is_integral(),
                        "chi": rational_str(&v.chi()),
                    });
                    if !v.is_torsion() {
                        obj["mu"] = json!(rational_str(&v.mu()));
                        obj["delta"] = json!(rational_str(&v.delta()));
                        obj["c2"] = json!(rational_str(&v.c2()));
                    }
                    println!("{obj}");
                }
                _ => {
                    println!("character = {v}");
                    if !v.is_torsion() {
                        println!("mu = {}", v.mu());
                        println!("delta = {}", v.delta());
                        println!("c2 = {}", v.c2());
                    }
                    println!("chi = {}", v.chi());
                    println!("integral = {}", v.is_integral());
                }
            }
            Ok(())
        }

        Command::Exceptional {
            index,
            mutations,
            format,
        } => {
            let idx: DyadicIndex = index.parse()?;
            let s = epsilon(&idx);
            let (a, b) = decompose(&s);
            let muts = if mutations && !s.index().is_integer() {
                Some(mutation_slopes(&s)?)
            } else {
                None
            };
            if format == Format::Json {
                let mut obj = slope_value(&s);
                obj["parents"] = json!([slope_value(&a), slope_value(&b)]);
                if let Some(m) = &muts {
                    obj["mutations"] = json!({
                        "alpha": slope_value(&m.alpha),
                        "eta": slope_value(&m.eta),
                        "zeta": slope_value(&m.zeta),
                        "omega": slope_value(&m.omega),
                    });
                }
                println!("{obj}");
            } else {
                println!("slope = {}", s.mu());
                println!("index = {}", s.index());
                println!("rank = {}", s.rank());
                println!("disc = {}", s.disc());
                println!("order = {}", s.order());
                println!(
                    "interval = ({}, {})  ~ ({:.6}, {:.6})",
                    s.left_end(),
                    s.right_end(),
                    s.left_end().to_f64(),
                    s.right_end().to_f64()
                );
                println!("parents = {} , {}", a.mu(), b.mu());
                if let Some(m) = &muts {
                    println!(
                        "mutations: alpha = {}, eta = {}, zeta = {}, omega = {}",
                        m.alpha.mu(),
                        m.eta.mu(),
                        m.zeta.mu(),
                        m.omega.mu()
                    );
                }
            }
            Ok(())
        }

        Command::Dlp(sub) => run_dlp(sub),

        Command::Stable { character } => {
            let v = parse_integral_character(&character)?;
            match stability_class(&v)? {
                StabilityClass::Exceptional => println!("exceptional (moduli = point)"),
                StabilityClass::PositiveDimensional => println!("positive-dimensional moduli"),
                StabilityClass::Empty => println!("no semistable sheaves"),
            }
            Ok(())
        }

        Command::Correspond { character, format } => {
            let v = parse_integral_character(&character)?;
            let res = resolution(&v)?;
            let ce = corresponding_exceptionals(&v)?;
            let orth = if v.is_torsion() {
                None
            } else {
                Some(orthogonal_characters(&v)?)
            };
            if format == Format::Json {
                let value = json!({
                    "nu_plus": slope_value(&res.nu_plus),
                    "nu_minus": ce.nu_minus.as_ref().map(slope_value),
                    "sign_case": match res.sign_case {
                        SignCase::PositiveChi => "positive-chi",
                        SignCase::NonpositiveChi => "nonpositive-chi",
                    },
                    "alpha": slope_value(&res.alpha),
                    "beta": slope_value(&res.beta),
                    "m1": bigint_value(&res.m1),
                    "m2": bigint_value(&res.m2),
                    "m3": bigint_value(&res.m3),
                    "k_char": res.k_char.to_string(),
                    "kronecker": {
                        "N": bigint_value(&res.kronecker.n),
                        "b": bigint_value(&res.kronecker.b),
                        "a": bigint_value(&res.kronecker.a),
                    },
                    "u_plus": orth.as_ref().map(|p| p.u_plus.to_string()),
                    "u_minus": orth.as_ref().map(|p| p.u_minus.to_string()),
                });
                println!("{value}");
            } else {
                println!(
                    "nu_plus = {} (index {})",
                    res.nu_plus.mu(),
                    res.nu_plus.index()
                );
                match &ce.nu_minus {
                    Some(m) => println!("nu_minus = {} (index {})", m.mu(), m.index()),
                    None => println!("nu_minus = - (torsion)"),
                }
                println!(
                    "sign_case = {}",
                    if res.sign_case == SignCase::PositiveChi {
                        "positive-chi"
                    } else {
                        "nonpositive-chi"
                    }
                );
                println!("alpha = {}, beta = {}", res.alpha.mu(), res.beta.mu());
                println!("m = ({}, {}, {})", res.m1, res.m2, res.m3);
                println!("k_char = {}", res.k_char);
                println!("kronecker = {}", res.kronecker);
                if let Some(p) = &orth {
                    println!("u_plus = {}", p.u_plus);
                    println!("u_minus = {}", p.u_minus);
                }
            }
            Ok(())
        }

        Command::Kronecker(sub) => run_kronecker(sub),

        Command::Cohomology { v, w, format } => {
            let v = parse_integral_character(&v)?;
            let w = parse_integral_character(&w)?;
            let report = generic_cohomology(&v, &w)?;
            match format {
                Format::Json => println!("{}", report_value(&report)),
                Format::Plain => print_report_plain(&report),
                Format::Csv => {
                    println!(
                        "h0,h1,h2,chi,region,special,requires_divisibility,sufficient_multiple"
                    );
                    println!(
                        "{},{},{},{},{},{},{},{}",
                        report.h0,
                        report.h1,
                        report.h2,
                        report.chi,
                        report.region,
                        report.special,
                        report.requires_divisibility,
                        report
                            .sufficient_multiple
                            .as_ref()
                            .map(|m| m.to_string())
                            .unwrap_or_else(|| "-".into()),
                    );
                }
            }
            Ok(())
        }

        Command::Regions {
            v,
            mu_min,
            mu_max,
            delta_min,
            delta_max,
            denominator,
            delta_denominator,
        } => {
            let v = parse_integral_character(&v)?;
            let classifier = RegionClassifier::new(&v)?;
            let mu_min = parse_rational(&mu_min)?;
            let mu_max = parse_rational(&mu_max)?;
            let delta_min = parse_rational(&delta_min)?;
            let delta_max = parse_rational(&delta_max)?;
            if denominator == 0 || mu_min > mu_max || delta_min > delta_max {
                return Err(Error::Parse("empty grid range".into()));
            }
            let mu_step = Rational::new(BigInt::one(), BigInt::from(denominator));
            let delta_step = Rational::new(
                BigInt::one(),
                BigInt::from(delta_denominator.unwrap_or(denominator).max(1)),
            );
            println!("mu,mu_approx,delta,delta_approx,region");
            let mut mu = mu_min.clone();
            while mu <= mu_max {
                let curve = delta_with_order(&mu, DEFAULT_MAX_ORDER)?;
                let mut d = delta_min.clone();
                while d <= delta_max {
                    let label = if d < curve {
                        "unstable".to_string()
                    } else {
                        classifier
                            .classify_point(&SlopeDiscPoint::new(mu.clone(), d.clone()))?
                            .to_string()
                    };
                    println!(
                        "{},{},{},{},{}",
                        rational_str(&mu),
                        rational_f64(&mu),
                        rational_str(&d),
                        rational_f64(&d),
                        label
                    );
                    d += &delta_step;
                }
                mu += &mu_step;
            }
            Ok(())
        }

        Command::Gg(sub) => run_gg(sub),

        Command::Orthogonal { v, w, format } => {
            let v = parse_integral_character(&v)?;
            match w {
                None => {
                    let pair = orthogonal_characters(&v)?;
                    let exponent = orthogonal_lattice_exponent(&v)?;
                    if format == Format::Json {
                        println!(
                            "{}",
                            json!({
                                "u_plus": pair.u_plus.to_string(),
                                "u_minus": pair.u_minus.to_string(),
                                "lattice_exponent": bigint_value(&exponent),
                            })
                        );
                    } else {
                        println!("u_plus = {}", pair.u_plus);
                        println!("u_minus = {}", pair.u_minus);
                        println!("lattice_exponent = {exponent}");
                    }
                }
                Some(w) => {
                    let w = parse_integral_character(&w)?;
                    let orth = cohomologically_orthogonal(&v, &w)?;
                    let multiple = sufficient_multiple(&v, &w)?;
                    if format == Format::Json {
                        println!(
                            "{}",
                            json!({
                                "cohomologically_orthogonal": orth,
                                "sufficient_multiple": bigint_value(&multiple),
                            })
                        );
                    } else {
                        println!("cohomologically_orthogonal = {orth}");
                        println!("sufficient_multiple = {multiple}");
                    }
                }
            }
            Ok(())
        }

        Command::Oracle(sub) => run_oracle(sub),
    }
}

fn run_dlp(cmd: DlpCommand) -> p2coh::Result<()> {
    match cmd {
        DlpCommand::Sample {
            min,
            max,
            denominator,
        } => {
            let min = parse_rational(&min)?;
            let max = parse_rational(&max)?;
            if denominator == 0 || min > max {
                return Err(Error::Parse("empty sample range".into()));
            }
            let step = Rational::new(BigInt::one(), BigInt::from(denominator));
            println!("mu,mu_approx,delta,delta_approx");
            let mut mu = min.clone();
            while mu <= max {
                let d = delta_with_order(&mu, DEFAULT_MAX_ORDER)?;
                println!(
                    "{},{},{},{}",
                    rational_str(&mu),
                    rational_f64(&mu),
                    rational_str(&d),
                    rational_f64(&d)
                );
                mu += &step;
            }
            Ok(())
        }
        DlpCommand::At { mu, max_order } => {
            let mu = parse_rational(&mu)?;
            let d = delta_with_order(&mu, max_order)?;
            println!("{d}");
            Ok(())
        }
        DlpCommand::Locate { mu, max_order } => {
            let mu = parse_rational(&mu)?;
            match locate(&QuadraticNumber::from_rational(mu), max_order) {
                LocateResult::Interior(s) => println!("interior of the interval of {s}"),
                LocateResult::LeftEndpoint(s) => println!("left endpoint of the interval of {s}"),
                LocateResult::RightEndpoint(s) => {
                    println!("right endpoint of the interval of {s}")
                }
                LocateResult::DepthExceeded => return Err(Error::DepthExceeded),
            }
            Ok(())
        }
    }
}

fn run_kronecker(cmd: KroneckerCommand) -> p2coh::Result<()> {
    match cmd {
        KroneckerCommand::Euler { f, e } => {
            let f = KroneckerShape::from_str(&f)?;
            let e = KroneckerShape::from_str(&e)?;
            println!("{}", euler_form(&f, &e)?);
            Ok(())
        }
        KroneckerCommand::Orbit { n, count } => {
            let orbit = exceptional_orbit(&BigInt::from(n), count)?;
            for s in orbit {
                println!("{s}");
            }
            Ok(())
        }
        KroneckerCommand::Exists { shape } => {
            let s = KroneckerShape::from_str(&shape)?;
            if semistable_exists(&s) {
                println!(
                    "semistable modules exist (expected dimension {})",
                    s.expected_dimension()
                );
            } else if let Some((prim, m)) = polystable_multiplicity(&s) {
                println!("polystable only: {m} copies of {prim}");
            } else {
                println!("no semistable modules");
            }
            Ok(())
        }
        KroneckerCommand::Decompose { shape } => {
            let s = KroneckerShape::from_str(&shape)?;
            for (summand, m) in decompose_general(&s).summands {
                println!("{summand} x {m}");
            }
            Ok(())
        }
        KroneckerCommand::Homext { f, e } => {
            let f = KroneckerShape::from_str(&f)?;
            let e = KroneckerShape::from_str(&e)?;
            let (hom, ext) = general_hom_ext(&f, &e)?;
            println!("hom = {hom}");
            println!("ext = {ext}");
            Ok(())
        }
    }
}

fn run_gg(cmd: GgCommand) -> p2coh::Result<()> {
    match cmd {
        GgCommand::Hom { v, w } => {
            let v = parse_integral_character(&v)?;
            let w = parse_integral_character(&w)?;
            println!("{}", hom_globally_generated(&v, &w)?);
            Ok(())
        }
        GgCommand::Tensor { v, w } => {
            let v = parse_integral_character(&v)?;
            let w = parse_integral_character(&w)?;
            println!("{}", tensor_globally_generated(&v, &w)?);
            Ok(())
        }
        GgCommand::ExcPair { e, f } => {
            let e = epsilon(&e.parse()?);
            let f = epsilon(&f.parse()?);
            println!(
                "{}",
                if exc_hom_globally_generated(&e, &f) {
                    "globally generated"
                } else {
                    "not globally generated"
                }
            );
            Ok(())
        }
        GgCommand::Exc { e } => {
            let e = epsilon(&e.parse()?);
            println!(
                "{}",
                if exc_globally_generated(&e) {
                    "globally generated"
                } else {
                    "not globally generated"
                }
            );
            Ok(())
        }
    }
}

fn run_oracle(cmd: OracleCommand) -> p2coh::Result<()> {
    match cmd {
        OracleCommand::KroneckerHom { f, e, flags } => {
            let f = KroneckerShape::from_str(&f)?;
            let e = KroneckerShape::from_str(&e)?;
            let cfg = OracleConfig {
                prime: flags.prime,
                trials: flags.trials,
                seed: flags.seed,
            };
            println!("{}", kronecker_hom_oracle(&f, &e, &cfg)?);
            Ok(())
        }
        OracleCommand::Delta { mu, max_order } => {
            let mu = parse_rational(&mu)?;
            println!("{}", delta_brute_force(&mu, max_order));
            Ok(())
        }
    }
}
