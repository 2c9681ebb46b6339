use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use vinberg::catalog::{self, VerificationReport};
use vinberg::deformation::classify_subregular;
use vinberg::grading::{
    ambient_base_weights, dimension_identity_check, invariant_degrees_of_b, principal_grading, stability_witness,
    GradedAlgebra,
};
use vinberg::nilpotent::{complete_sl2, listing_label, orbit_data, search_nilpotents, SearchOptions};
use vinberg::parse::{format_element, parse_element};
use vinberg::rootdata::{
    bigint_list_to_strings, coinvariant_lattice, e8_a4a4_subsystem, parse_type_label, rho_check, subsystem_coxeter,
};
use vinberg::scalars::fmt_q;
use vinberg::slice::{corank_check, is_reduced, slodowy_slice, synthesize_curve_family};
use vinberg::{with_graded, ChevalleyAlgebra, DynkinType, Field, GradingSpec, RootSystem};

#[derive(Parser)]
#[command(name = "vinberg", version, about = "Graded Lie algebras, nilpotent orbits and their curve families")]
struct Cli {
    /// seed for every randomized step
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// include the exceptional cases of rank 6 to 8
    #[arg(long, global = true)]
    big: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// type letter, or a label such as F4
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn resolve(&self) -> Result<(DynkinType, usize)> {
        match self.rank {
            Some(r) => Ok((DynkinType::parse(&self.ty)?, r)),
            None if self.ty.len() > 1 => Ok(parse_type_label(&self.ty)?),
            None => bail!("--rank is required with a bare type letter"),
        }
    }
}

#[derive(Args, Clone)]
struct GradeArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long)]
    m: usize,
    /// order of the diagram automorphism
    #[arg(long, default_value_t = 1)]
    outer: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// root system data
    Roots(TypeArgs),
    /// principal grading: piece dimensions and invariant degrees
    Grade(GradeArgs),
    /// search for a stable vector
    StableCheck {
        #[command(flatten)]
        g: GradeArgs,
        #[arg(long, default_value_t = 24)]
        trials: usize,
    },
    /// nilpotent orbits of small relative dimension
    Orbits {
        #[command(flatten)]
        g: GradeArgs,
        #[arg(long, default_value_t = 8)]
        max_support: usize,
        #[arg(long, default_value_t = 1)]
        max_reldim: usize,
    },
    /// graded slice at a nilpotent
    Slice {
        #[command(flatten)]
        g: GradeArgs,
        /// element such as "1*r[1] + 1*r[2] - 2*r[1,1]"
        #[arg(long)]
        e: String,
    },
    /// subregular curve families
    Curves {
        #[command(flatten)]
        g: GradeArgs,
        /// also synthesize from searched slices
        #[arg(long)]
        synthesize: bool,
    },
    /// regenerate the classification table
    Catalog {
        #[arg(long, default_value_t = 30)]
        max_m: usize,
        /// every listed case, as with --big
        #[arg(long)]
        all: bool,
    },
    /// run the fixtures and controls
    VerifyPaper {
        /// a single fixture id such as F4/8
        #[arg(long)]
        case: Option<String>,
    },
    /// invariant factors of L/(1-w)L
    Coinvariants {
        /// roots whose reflections multiply to w, as "1,0,..;0,1,.."; default the A4 x A4 element of E8
        #[arg(long)]
        roots: Option<String>,
        #[arg(long = "type", default_value = "E8")]
        ty: String,
    },
}

fn print(json_out: bool, v: &Value, text: impl FnOnce() -> String) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    } else {
        println!("{}", text());
    }
}

fn grading(g: &GradeArgs) -> Result<(RootSystem, vinberg::Graded)> {
    let (t, l) = g.ty.resolve()?;
    let rs = RootSystem::new(t, l)?;
    let spec = GradingSpec::with_outer_order(&rs, g.m, g.outer)?;
    let chev = ChevalleyAlgebra::new(&rs);
    let gr = principal_grading(&chev, &spec)?;
    Ok((rs, gr))
}

fn roots(json_out: bool, a: &TypeArgs) -> Result<usize> {
    let (t, l) = a.resolve()?;
    let rs = RootSystem::new(t, l)?;
    let mut v = rs.to_json();
    v["positive"] = json!(rs.num_positive());
    v["highest_root"] = json!(rs.highest_root());
    v["coxeter_number"] = json!(rs.coxeter_number());
    v["rho_check"] = json!(rho_check(&rs).iter().map(fmt_q).collect::<Vec<_>>());
    v["weyl_order"] = json!(rs.weyl_order().to_string());
    print(json_out, &v, || {
        format!(
            "{}: {} roots, highest root {:?}, Coxeter number {}, degrees {:?}, |W| = {}",
            rs.label(),
            rs.num_roots(),
            rs.highest_root(),
            rs.coxeter_number(),
            rs.invariant_degrees(),
            rs.weyl_order()
        )
    });
    Ok(0)
}

fn grade_info<F: Field>(g: &GradedAlgebra<F>) -> Value {
    json!({
        "m": g.m(),
        "outer": g.spec.outer_order(),
        "piece_dims": g.piece_dims(),
        "graded_brackets": g.graded_bracket_check(),
        "base_degrees": invariant_degrees_of_b(g),
        "base_weights": ambient_base_weights(g),
        "dimension_identity": dimension_identity_check(g),
    })
}

fn grade(json_out: bool, a: &GradeArgs) -> Result<usize> {
    let (rs, g) = grading(a)?;
    let mut v = with_graded!(&g, ga => grade_info(ga));
    v["type"] = json!(rs.label());
    let fails = usize::from(!v["graded_brackets"].as_bool().unwrap_or(false));
    print(json_out, &v, || {
        format!(
            "{} m={} outer={}: pieces {}, degrees of B {}, dim h_1 = dim h_0 + dim B: {}",
            rs.label(),
            a.m,
            a.outer,
            v["piece_dims"],
            v["base_degrees"],
            v["dimension_identity"]
        )
    });
    Ok(fails)
}

fn stable_check(json_out: bool, a: &GradeArgs, trials: usize, seed: u64) -> Result<usize> {
    let (rs, g) = grading(a)?;
    let cert = with_graded!(&g, ga => stability_witness(ga, trials, seed));
    let v = serde_json::to_value(&cert)?;
    print(json_out, &v, || {
        format!("{} m={} outer={}: {} (stabilizer dimension {})", rs.label(), a.m, a.outer, cert.verdict, cert.stabilizer_dim)
    });
    Ok(0)
}

fn orbits(json_out: bool, a: &GradeArgs, max_support: usize, max_reldim: usize, seed: u64) -> Result<usize> {
    let (rs, g) = grading(a)?;
    let opts = SearchOptions { max_support, seed, max_relative_dimension: max_reldim, ..SearchOptions::default() };
    let reps = with_graded!(&g, ga => search_nilpotents(ga, &opts));
    let rows: Vec<Value> = reps
        .iter()
        .map(|r| {
            json!({
                "support": r.support,
                "coeffs": r.coeffs,
                "label": listing_label(rs.dynkin_type, &r.data.dynkin_label),
                "reldim": r.data.relative_dimension,
                "weights": r.data.slice_weights,
            })
        })
        .collect();
    print(json_out, &Value::Array(rows.clone()), || {
        let mut out = String::new();
        for (i, r) in reps.iter().enumerate() {
            out.push_str(&format!(
                "{}. Dynkin labelling: [ {} ]\nRelative dimension: {}\n",
                i + 1,
                listing_label(rs.dynkin_type, &r.data.dynkin_label)
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                r.data.relative_dimension
            ));
            let mut w = r.data.slice_weights.clone();
            w.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
            let mut k = 0;
            while k < w.len() {
                let n = w[k..].iter().take_while(|x| **x == w[k]).count();
                out.push_str(&format!("Weight [ {}, {} ] with multiplicity {}\n", w[k].0, w[k].1, n));
                k += n;
            }
            out.push('\n');
        }
        out.trim_end().to_string()
    });
    Ok(0)
}

fn slice_at<F: Field>(g: &GradedAlgebra<F>, e: &str, seed: u64) -> Result<Value> {
    let x = parse_element(&g.chev, e)?;
    let v = g.from_element(&x)?;
    if !g.in_piece(&v, 1) {
        bail!("{} is not in degree 1", format_element(&g.chev, &x));
    }
    let t = complete_sl2(g, &v)?;
    let sd = slodowy_slice(g, &t)?;
    let data = orbit_data(g, &t);
    let mut out = json!({
        "e": format_element(&g.chev, &x),
        "h": format_element(&g.chev, &g.to_element(&t.h)),
        "f": format_element(&g.chev, &g.to_element(&t.f)),
        "label": listing_label(g.chev.root_system.dynkin_type, &data.dynkin_label),
        "reldim": data.relative_dimension,
        "slice": sd.summary(),
        "corank": corank_check(&sd),
    });
    if data.relative_dimension == 0 {
        out["reduced"] = json!(is_reduced(&sd)?);
    }
    if data.relative_dimension == 1 {
        match synthesize_curve_family(&sd.rho_weights(), &sd.base_rho(), seed) {
            Ok(c) => {
                out["curve"] = json!(c.family.display_equation());
                out["free_coeffs"] = json!(c.family.free_coeffs);
            }
            Err(err) => out["curve_error"] = json!(err.to_string()),
        }
    }
    Ok(out)
}

fn slice(json_out: bool, a: &GradeArgs, e: &str, seed: u64) -> Result<usize> {
    let (_, g) = grading(a)?;
    let v = with_graded!(&g, ga => slice_at(ga, e, seed))?;
    print(json_out, &v, || {
        let mut s = format!(
            "label {} relative dimension {}\nslice weights {}\nbase weights {}",
            v["label"], v["reldim"], v["slice"]["slice_weights"], v["slice"]["base_weights"]
        );
        if let Some(c) = v.get("curve") {
            s.push_str(&format!("\ncurve {}", c.as_str().unwrap_or("")));
        }
        s
    });
    Ok(0)
}

fn curves(json_out: bool, a: &GradeArgs, synthesize: bool, seed: u64) -> Result<usize> {
    let (t, l) = a.ty.resolve()?;
    let fams = classify_subregular(t, l, a.m, a.outer)?;
    let mut rows: Vec<Value> = fams
        .iter()
        .map(|c| {
            json!({
                "equation": c.family.normalized().map(|f| f.display_equation()).unwrap_or_default(),
                "raw_equation": c.family.display_equation(),
                "provenance": "deformation",
                "variant": c.variant,
                "sigma": c.sigma,
                "params": c.family.params,
                "weights": c.family.var_weights,
            })
        })
        .collect();
    if synthesize {
        let run = catalog::run_case(t, l, a.m, a.outer, seed)?;
        for o in run.orbits.iter().filter(|o| o.theta_subregular) {
            rows.push(json!({
                "equation": o.curve,
                "provenance": "weight-synthesis",
                "label": o.listing_label,
                "free_coeffs": o.free_coeffs,
            }));
        }
    }
    let v = Value::Array(rows);
    print(json_out, &v, || {
        if fams.is_empty() {
            return format!("{}: no subregular curve families", catalog::case_label(t, l, a.m, a.outer));
        }
        v.as_array()
            .unwrap()
            .iter()
            .map(|r| format!("{} [{}]", r["equation"].as_str().unwrap_or("?"), r["provenance"].as_str().unwrap_or("")))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(0)
}

fn catalog_cmd(json_out: bool, max_m: usize, big: bool, seed: u64) -> Result<usize> {
    let v = catalog::emit_catalog(max_m, big, seed)?;
    let rows = v["rows"].as_array().cloned().unwrap_or_default();
    let fails = rows
        .iter()
        .filter(|r| r["table_match"] != json!(true) || r["cross_pipeline"] == json!(false))
        .count();
    print(json_out, &v, || {
        let mut out = String::new();
        for r in &rows {
            out.push_str(&format!("{}:", r["case"].as_str().unwrap_or("")));
            for d in r["deformation"].as_array().into_iter().flatten() {
                out.push_str(&format!("  {}", d["equation"].as_str().unwrap_or("")));
            }
            out.push_str(&format!(
                "  [table {}, synthesis {}]\n",
                r["table_match"],
                if r["cross_pipeline"].is_null() { "not found".to_string() } else { r["cross_pipeline"].to_string() }
            ));
        }
        for a in v["absent"].as_array().into_iter().flatten() {
            out.push_str(&format!("{}: absent ({})\n", a["case"].as_str().unwrap_or(""), a["reason"].as_str().unwrap_or("")));
        }
        out.trim_end().to_string()
    });
    Ok(fails)
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}: {}/{} checks pass ({:.1}s)",
        r.case,
        r.checks.len() - r.failures(),
        r.checks.len(),
        r.runtime
    );
    for c in r.checks.iter().filter(|c| !c.pass) {
        s.push_str(&format!("\n  FAIL {}: expected {} [{}], got {}", c.name, c.expected, c.source, c.actual));
    }
    s
}

fn verify(json_out: bool, case: Option<&str>, big: bool, seed: u64) -> Result<usize> {
    let reports = match case {
        Some(id) => vec![catalog::run_fixture(id, seed)?],
        None => catalog::verify_paper(big, seed)?,
    };
    let fails: usize = reports.iter().map(|r| r.failures()).sum();
    let v = serde_json::to_value(&reports)?;
    print(json_out, &v, || reports.iter().map(report_text).collect::<Vec<_>>().join("\n"));
    Ok(fails)
}

fn coinvariants(json_out: bool, ty: &str, roots: Option<&str>) -> Result<usize> {
    let (t, l) = parse_type_label(ty)?;
    let rs = RootSystem::new(t, l)?;
    let sub: Vec<Vec<i64>> = match roots {
        Some(s) => s
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("bad root {:?}", r))).collect())
            .collect::<Result<_>>()?,
        None if rs.label() == "E8" => e8_a4a4_subsystem(&rs),
        None => bail!("--roots is required outside E8"),
    };
    let w = subsystem_coxeter(&rs, &sub)?;
    let factors = bigint_list_to_strings(&coinvariant_lattice(&w));
    let v = json!({
        "type": rs.label(),
        "order": w.order(1000),
        "elliptic": w.is_elliptic(),
        "invariant_factors": factors,
    });
    print(json_out, &v, || {
        format!(
            "{}: order {:?}, elliptic {}, L/(1-w)L invariant factors {}",
            rs.label(),
            w.order(1000),
            w.is_elliptic(),
            factors.join(" ")
        )
    });
    Ok(0)
}

fn run(cli: &Cli) -> Result<usize> {
    let j = cli.json;
    match &cli.cmd {
        Cmd::Roots(a) => roots(j, a),
        Cmd::Grade(a) => grade(j, a),
        Cmd::StableCheck { g, trials } => stable_check(j, g, *trials, cli.seed),
        Cmd::Orbits { g, max_support, max_reldim } => orbits(j, g, *max_support, *max_reldim, cli.seed),
        Cmd::Slice { g, e } => slice(j, g, e, cli.seed),
        Cmd::Curves { g, synthesize } => curves(j, g, *synthesize, cli.seed),
        Cmd::Catalog { max_m, all } => catalog_cmd(j, *max_m, *all || cli.big, cli.seed),
        Cmd::VerifyPaper { case } => verify(j, case.as_deref(), cli.big, cli.seed),
        Cmd::Coinvariants { roots, ty } => coinvariants(j, ty, roots.as_deref()),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(fails) => std::process::exit(fails.min(255) as i32),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(255);
        }
    }
}
