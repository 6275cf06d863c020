use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use mgsim::algebra::file::{AlgebraFile, LoadedAlgebra};
use mgsim::algebra::{decompose_chains, direct_product, make_chain, product_index, validate_gsim, FiniteGAlgebra};
use mgsim::functional::{functional_representation, make_functional};
use mgsim::logic::{check_axioms, consequence_search, kripke_countermodel, parse, ConsequenceQuery, Verdict};
use mgsim::monadic::{
    attach_quantifiers, classify_cmg, embed_with_fixed_point, enumerate_mg_algebras, enumerate_si_cmg_fixed_point,
    is_subdirectly_irreducible, validate_monadic, EnumeratedAlgebra, Parity,
};
use mgsim::{Elem, MonadicGAlgebra, Subalgebra};
use serde_json::{json, Value};

use crate::{EmbedMode, SemanticsArg};

/// What a command prints and the exit code it asks for.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }

    fn refuted(json: Value, text: String, refuted: bool) -> Self {
        Outcome { json, text, code: u8::from(refuted) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RangeSpec {
    /// Constant tuples of a power of one chain.
    Diagonal,
    /// `{0, 1}`.
    Bounds,
    Full,
    Indices(Vec<Elem>),
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "diagonal" => Ok(RangeSpec::Diagonal),
            "bounds" => Ok(RangeSpec::Bounds),
            "full" => Ok(RangeSpec::Full),
            _ => {
                let list = s
                    .strip_prefix("indices:")
                    .ok_or_else(|| format!("unknown range `{s}` (diagonal, bounds, full or indices:<list>)"))?;
                list.split(',')
                    .map(|x| x.trim().parse::<Elem>().map_err(|e| format!("bad index `{x}`: {e}")))
                    .collect::<Result<_, _>>()
                    .map(RangeSpec::Indices)
            }
        }
    }
}

fn range_elements(spec: &RangeSpec, chains: &[usize], a: &FiniteGAlgebra) -> anyhow::Result<Vec<Elem>> {
    Ok(match spec {
        RangeSpec::Diagonal => {
            let n = chains[0];
            if chains.iter().any(|&m| m != n) {
                bail!("diagonal range needs equal chain sizes, got {chains:?}");
            }
            (0..n).map(|i| product_index(chains, &vec![i; chains.len()])).collect()
        }
        RangeSpec::Bounds => vec![a.bottom(), a.top()],
        RangeSpec::Full => a.elements().collect(),
        RangeSpec::Indices(v) => v.clone(),
    })
}

fn product_of(chains: &[usize]) -> anyhow::Result<FiniteGAlgebra> {
    if chains.is_empty() {
        bail!("--chains needs at least one size");
    }
    let factors = chains.iter().map(|&n| make_chain(n)).collect::<Result<Vec<_>, _>>()?;
    Ok(direct_product(&factors)?)
}

fn load(path: &Path) -> anyhow::Result<LoadedAlgebra> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AlgebraFile::parse(&text).with_context(|| format!("loading {}", path.display()))
}

/// Loads a file with quantifier tables and checks every law.
fn load_monadic(path: &Path) -> anyhow::Result<MonadicGAlgebra> {
    match load(path)? {
        LoadedAlgebra::Monadic(m) => {
            let (base, ex, fa) = (m.base().clone(), m.exists_table().to_vec(), m.forall_table().to_vec());
            Ok(MonadicGAlgebra::checked(base, ex, fa).with_context(|| format!("validating {}", path.display()))?)
        }
        LoadedAlgebra::Plain(_) => bail!("{} has no exists/forall tables", path.display()),
    }
}

fn write_algebra(path: &Path, file: &AlgebraFile) -> anyhow::Result<()> {
    std::fs::write(path, file.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}

fn chain_sizes(a: &FiniteGAlgebra) -> Option<Vec<usize>> {
    decompose_chains(a).ok().map(|d| d.sizes)
}

pub fn build(
    chains: &[usize],
    range: Option<&RangeSpec>,
    functional: Option<usize>,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let (file, range_elems) = if let Some(m) = functional {
        let [n] = chains else {
            bail!("--functional needs exactly one chain, got {chains:?}");
        };
        let f = make_functional(&make_chain(*n)?, m)?;
        (AlgebraFile::from_monadic(&f), Some(f.range()))
    } else {
        let a = product_of(chains)?;
        match range {
            Some(spec) => {
                let elems = range_elements(spec, chains, &a)?;
                let sub = Subalgebra::new(&a, elems)?;
                let m = attach_quantifiers(&a, &sub)?;
                (AlgebraFile::from_monadic(&m), Some(m.range()))
            }
            None => (AlgebraFile::from_algebra(&a), None),
        }
    };
    let Some(path) = out else {
        let json = serde_json::to_value(&file)?;
        return Ok(Outcome::ok(json, file.to_json() + "\n"));
    };
    write_algebra(path, &file)?;
    let fixed: Vec<Elem> = (0..file.size).filter(|&x| file.sim[x] == x).collect();
    let json = json!({
        "out": path.display().to_string(),
        "size": file.size,
        "fixed_points": fixed,
        "range": range_elems,
    });
    let text = format!(
        "wrote {} ({} elements, fixed points {:?}, range {:?})\n",
        path.display(),
        file.size,
        fixed,
        range_elems
    );
    Ok(Outcome::ok(json, text))
}

pub fn validate(path: &Path) -> anyhow::Result<Outcome> {
    let loaded = load(path)?;
    let mut report = validate_gsim(loaded.base());
    if let LoadedAlgebra::Monadic(m) = &loaded {
        report.extend(validate_monadic(m));
    }
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "ok" } else { "FAIL" };
        write!(text, "{status:4} {}", c.law)?;
        if let Some(w) = &c.witness {
            write!(text, " ({}) at {w:?}", c.detail.unwrap_or(""))?;
        }
        text.push('\n');
    }
    let json = json!({
        "passed": report.passed(),
        "monadic": matches!(loaded, LoadedAlgebra::Monadic(_)),
        "checks": report.checks,
    });
    Ok(Outcome::refuted(json, text, !report.passed()))
}

pub fn classify(path: &Path) -> anyhow::Result<Outcome> {
    let m = load_monadic(path)?;
    let si = is_subdirectly_irreducible(&m)?;
    let sizes = chain_sizes(m.base());
    let cmg = if si.si { Some(classify_cmg(&m)?) } else { None };
    let direct = m.satisfies_c();
    let fixed_point = m.base().fixed_points().first().copied();
    let agree = si.agree && cmg.as_ref().is_none_or(|c| c.agree);
    let json = json!({
        "size": m.size(),
        "chain_sizes": sizes,
        "range": m.range(),
        "si": si.si,
        "simple": si.simple,
        "directly_indecomposable": si.directly_indecomposable,
        "range_chain": si.range_chain,
        "fixed_point": fixed_point,
        "parity": sizes.as_deref().map(Parity::of),
        "cmg_criterion": cmg.as_ref().map(|c| c.criterion),
        "cmg_direct": direct,
        "c_witness": m.c_witness(),
        "agree": agree,
        "congruence_count": si.filter_count,
    });
    let mut text = format!(
        "size {}, range {:?}\nsi {}, simple {}, directly indecomposable {}\n",
        m.size(),
        m.range(),
        si.si,
        si.simple,
        si.directly_indecomposable
    );
    match &cmg {
        Some(c) => writeln!(text, "cmg criterion {}, direct {}, agree {}", c.criterion, direct, agree)?,
        None => writeln!(text, "(C) holds: {direct}")?,
    }
    writeln!(text, "congruences {}", si.filter_count)?;
    Ok(Outcome::ok(json, text))
}

pub fn load_query(file: Option<&Path>, goal: Option<&str>, premises: &[String]) -> anyhow::Result<ConsequenceQuery> {
    match (file, goal) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(ConsequenceQuery::parse_text(&text)?)
        }
        (None, Some(g)) => {
            let ps = premises.iter().map(|p| parse(p)).collect::<Result<Vec<_>, _>>()?;
            Ok(ConsequenceQuery::new(ps, parse(g)?))
        }
        (None, None) => Err(anyhow!("give a query file or --goal")),
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!(
        "{}: {} (bound {}, examined {})",
        serde_json::to_value(v.semantics).expect("enum").as_str().unwrap_or(""),
        serde_json::to_value(v.verdict).expect("enum").as_str().unwrap_or(""),
        v.bound,
        v.examined
    );
    if let (Some(sizes), Some(range)) = (&v.chain_sizes, &v.range) {
        write!(s, "\n  chains {sizes:?}, range {range:?}").expect("string");
    }
    if let Some(names) = &v.assignment_names {
        for (var, name) in names {
            write!(s, "\n  {var} = {name}").expect("string");
        }
    }
    if let Some(w) = v.world {
        write!(s, "\n  goal value {} at world {w}", v.value.unwrap_or_default()).expect("string");
    }
    if v.conclusive {
        s.push_str("\n  conclusive");
    }
    s.push('\n');
    s
}

pub fn prove(q: &ConsequenceQuery, semantics: SemanticsArg) -> anyhow::Result<Outcome> {
    let mut verdicts = Vec::new();
    if semantics != SemanticsArg::Kripke {
        verdicts.push(consequence_search(q)?);
    }
    if semantics != SemanticsArg::Algebra {
        verdicts.push(kripke_countermodel(q)?);
    }
    let refuted = verdicts.iter().any(Verdict::is_countermodel);
    let text = verdicts.iter().map(verdict_text).collect();
    let json = match semantics {
        SemanticsArg::Both => json!({ "algebra": verdicts[0], "kripke": verdicts[1] }),
        _ => serde_json::to_value(&verdicts[0])?,
    };
    Ok(Outcome::refuted(json, text, refuted))
}

pub fn embed(path: &Path, mode: EmbedMode, samples: usize, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let m = load_monadic(path)?;
    match mode {
        EmbedMode::FixedPoint => {
            let ext = embed_with_fixed_point(&m)?;
            let mut report = validate_gsim(ext.algebra.base());
            report.extend(validate_monadic(&ext.algebra));
            let si = is_subdirectly_irreducible(&ext.algebra)?.si;
            let verified = report.passed() && si;
            if let Some(p) = out {
                write_algebra(p, &AlgebraFile::from_monadic(&ext.algebra))?;
            }
            let text = format!(
                "chains {:?}, fixed point {}, range {:?}\nembedding {:?}\nquantifiers preserved {}, verified {}\n",
                ext.chain_sizes, ext.fixed_point, ext.range, ext.embedding, ext.preserves_quantifiers, verified
            );
            let mut json = serde_json::to_value(&ext)?;
            json["size"] = json!(ext.algebra.size());
            json["verified"] = json!(verified);
            Ok(Outcome::refuted(json, text, !verified))
        }
        EmbedMode::Functional => {
            let (rep, report) = functional_representation(&m, samples)?;
            if let Some(p) = out {
                write_algebra(p, &AlgebraFile::from_monadic(&rep.power))?;
            }
            let text = format!(
                "B has {} elements, range {:?}; B^{} has {}\nembedding {:?}\nsequence embedding passed {}\n",
                rep.chain.size(),
                rep.chain.range(),
                rep.factor_maps.len(),
                rep.power.size(),
                rep.embedding,
                report.passed()
            );
            let json = json!({
                "chain_size": rep.chain.size(),
                "chain_range": rep.chain.range(),
                "power": rep.factor_maps.len(),
                "power_size": rep.power.size(),
                "factor_maps": rep.factor_maps,
                "embedding": rep.embedding,
                "sequences": report,
                "verified": report.passed(),
            });
            Ok(Outcome::refuted(json, text, !report.passed()))
        }
    }
}

fn listing(algebras: &[EnumeratedAlgebra]) -> (Vec<Value>, String) {
    let mut text = String::new();
    let rows = algebras
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let c = e.algebra.satisfies_c();
            let si = e.algebra.range_is_chain();
            writeln!(text, "{i:4} chains {:?} range {:?} si {si} C {c}", e.chain_sizes, e.range).expect("string");
            json!({
                "index": i,
                "size": e.algebra.size(),
                "chain_sizes": e.chain_sizes,
                "range": e.range,
                "si": si,
                "satisfies_c": c,
            })
        })
        .collect();
    (rows, text)
}

pub fn enumerate(
    max_size: usize,
    si_only: bool,
    cmg_fixed_point: bool,
    bound: usize,
    out_dir: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let algebras = if cmg_fixed_point {
        enumerate_si_cmg_fixed_point(max_size, bound)?
    } else {
        enumerate_mg_algebras(max_size, si_only, bound)?
    };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        for (i, e) in algebras.iter().enumerate() {
            write_algebra(&dir.join(format!("{i}.json")), &AlgebraFile::from_monadic(&e.algebra))?;
        }
    }
    let (rows, text) = listing(&algebras);
    let json = json!({ "max_size": max_size, "count": algebras.len(), "algebras": rows });
    Ok(Outcome::ok(json, text))
}

pub fn soundness(path: &Path) -> anyhow::Result<Outcome> {
    let m = load_monadic(path)?;
    let report = check_axioms(&m);
    let mut text = String::new();
    for a in &report.axioms {
        let status = if a.valid { "ok" } else { "FAIL" };
        write!(text, "{status:4} {}: {}", a.name, a.formula)?;
        if let Some(c) = &a.counterexample {
            write!(text, " at {c:?}")?;
        }
        text.push('\n');
    }
    for r in &report.rules {
        writeln!(text, "{:4} rule {}", if r.preserved { "ok" } else { "FAIL" }, r.name)?;
    }
    let json = json!({
        "passed": report.passed(),
        "failing_axioms": report.failing_axioms(),
        "axioms": report.axioms,
        "rules": report.rules,
    });
    Ok(Outcome::refuted(json, text, !report.passed()))
}
