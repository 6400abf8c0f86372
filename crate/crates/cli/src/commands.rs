use std::fs;

use adeshuffle::algebra::{LaurentPoly, LinearBinomial, RatFunc, VarId};
use adeshuffle::fusion::{verify_fusion, FusionConfig, RecordMode};
use adeshuffle::paths::{area_between, convexify, enumerate_convex_above, format_legs, parse_legs};
use adeshuffle::quiver::{MinimalPair, Quiver, TieBreak};
use adeshuffle::roots::{build_root_system, CartanMatrix, DynkinType, RootVec};
use adeshuffle::shuffle::{
    generator, is_color_symmetric, pairing, product_of_generators, serre_defect, wheel_check, zeta_commutation_defect,
};
use adeshuffle::specialization::{
    expected_zeta_ratio, pole_order_check, spec_map, two_point, two_point_direct, zeta_ratio, Split,
};
use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use crate::{parse, Command, Format, OutArgs, PathsOp, Records, Refinement};

const SCHEMA_VERSION: u32 = 1;

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Write the versioned report envelope and return `pass`.
fn report(out: &OutArgs, command: &str, config: Value, result: Value, pass: bool) -> Result<bool> {
    let doc = json!({
        "schema": "adeshuffle-report",
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "pass": pass,
        "result": result,
    });
    emit(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(pass)
}

fn rat(r: &RatFunc) -> Value {
    json!({ "text": r.to_string(), "exact": r.to_json() })
}

fn quiver_config(q: &Quiver) -> Value {
    json!({
        "type": q.orientation.dynkin.to_string(),
        "orientation": q.orientation.to_string(),
        "tau": q.tau,
    })
}

fn refinement_meta(r: Refinement) -> Value {
    match r {
        Refinement::Any => {
            json!({ "refinement": "any", "note": "pairs minimal in at least one total refinement of the AR order" })
        }
        Refinement::Lex => json!({ "refinement": "lex", "tie_break": "height, then root index ascending" }),
        Refinement::Revlex => json!({ "refinement": "revlex", "tie_break": "height, then root index descending" }),
    }
}

fn minimal_pairs(q: &Quiver, r: Refinement) -> Result<Vec<MinimalPair>> {
    let ar = q.ar_quiver();
    Ok(match r {
        Refinement::Any => ar.minimal_pairs_any_refinement(&q.roots),
        Refinement::Lex => ar.minimal_pairs(&q.roots, &ar.refinement(TieBreak::Lex))?,
        Refinement::Revlex => ar.minimal_pairs(&q.roots, &ar.refinement(TieBreak::RevLex))?,
    })
}

pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Roots { dynkin, out } => roots(&dynkin, &out),
        Command::ArQuiver { quiver, format, out } => {
            let q = parse::quiver(&quiver)?;
            ar_quiver(&q, format, &out)
        }
        Command::MinimalPairs {
            quiver,
            refinement,
            out,
        } => {
            let q = parse::quiver(&quiver)?;
            let pairs = minimal_pairs(&q, refinement)?;
            let list: Vec<Value> = pairs
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    json!({
                        "index": k,
                        "alpha": p.alpha,
                        "beta": p.beta,
                        "euler_alpha_beta": q.euler_form(&p.alpha, &p.beta),
                        "euler_beta_alpha": q.euler_form(&p.beta, &p.alpha),
                    })
                })
                .collect();
            let mut config = quiver_config(&q);
            config["order"] = refinement_meta(refinement);
            report(
                &out,
                "minimal-pairs",
                config,
                json!({ "count": pairs.len(), "pairs": list }),
                true,
            )
        }
        Command::ShuffleMul { quiver, word, out } => {
            let q = parse::quiver(&quiver)?;
            let w = parse::word(&q, &word)?;
            let r = product_of_generators(&q, &w)?;
            let mut config = quiver_config(&q);
            config["word"] = json!(word);
            let result = json!({
                "degree": r.degree.to_root(),
                "numerator": r.numerator.to_string(),
                "element": r.to_json(),
                "wheel_conditions": wheel_check(&q, &r),
                "color_symmetric": is_color_symmetric(&r),
            });
            report(&out, "shuffle-mul", config, result, true)
        }
        Command::Pairing {
            quiver,
            element,
            word,
            out,
        } => {
            let q = parse::quiver(&quiver)?;
            let r = product_of_generators(&q, &parse::word(&q, &element)?)?;
            let value = pairing(&q, &r, &parse::word(&q, &word)?)?;
            let mut config = quiver_config(&q);
            config["element"] = json!(element);
            config["word"] = json!(word);
            report(&out, "pairing", config, json!({ "value": value.to_string() }), true)
        }
        Command::Spec {
            quiver,
            element,
            v,
            w,
            out,
        } => {
            let q = parse::quiver(&quiver)?;
            spec(&q, &element, v.as_deref(), w.as_deref(), &out)
        }
        Command::VerifyFusion {
            quiver,
            window,
            degrees,
            pair,
            refinement,
            records,
            out,
        } => {
            let q = parse::quiver(&quiver)?;
            if window < 0 {
                bail!("window must be nonnegative");
            }
            let cfg = FusionConfig {
                window,
                degrees: parse::range(&degrees)?,
                records: match records {
                    Records::All => RecordMode::All,
                    Records::Failures => RecordMode::Failures,
                    Records::None => RecordMode::None,
                },
            };
            let mut pairs = minimal_pairs(&q, refinement)?;
            if let Some(k) = pair {
                if k >= pairs.len() {
                    bail!("pair index {k} out of range (there are {} minimal pairs)", pairs.len());
                }
                pairs = vec![pairs[k].clone()];
            }
            let mut rep = verify_fusion(&q, &pairs, &cfg)?;
            if let Some(k) = pair {
                rep.pairs.iter_mut().for_each(|s| s.index = k);
                rep.records.iter_mut().for_each(|r| r.pair = k);
            }
            let mut config = quiver_config(&q);
            config["order"] = refinement_meta(refinement);
            config["window"] = json!(window);
            config["degrees"] = json!([cfg.degrees.start(), cfg.degrees.end()]);
            config["pair"] = json!(pair);
            config["records"] = json!(cfg.records);
            let pass = rep.all_pass();
            report(&out, "verify-fusion", config, serde_json::to_value(&rep)?, pass)
        }
        Command::Paths { op } => paths(op),
        Command::Selftest { quiver, out } => {
            let q = parse::quiver(&quiver)?;
            selftest(&q, &out)
        }
    }
}

fn roots(dynkin: &str, out: &OutArgs) -> Result<bool> {
    let t: DynkinType = dynkin.parse()?;
    let rs = build_root_system(t);
    let c = CartanMatrix::of(t);
    let cartan: Vec<Vec<i64>> = (0..c.rank())
        .map(|i| (0..c.rank()).map(|j| c.get(i, j)).collect())
        .collect();
    let result = json!({
        "count": rs.positive_roots.len(),
        "positive_roots": rs.positive_roots,
        "highest_root": rs.highest_root(),
        "cartan": cartan,
    });
    report(out, "roots", json!({ "type": t.to_string() }), result, true)
}

fn ar_quiver(q: &Quiver, format: Format, out: &OutArgs) -> Result<bool> {
    let ar = q.ar_quiver();
    if format == Format::Dot {
        emit(out, &ar.to_dot())?;
        return Ok(true);
    }
    let order = ar.refinement(TieBreak::Lex);
    let mut config = quiver_config(q);
    config["order"] = refinement_meta(Refinement::Lex);
    let result = json!({
        "roots": ar.roots,
        "arrows": ar.arrows,
        "order_matrix": ar.order_matrix(),
        "refinement": order.sequence(),
        "minimal_pairs": ar.minimal_pairs(&q.roots, &order)?,
        "minimal_pairs_any_refinement": ar.minimal_pairs_any_refinement(&q.roots),
    });
    report(out, "ar-quiver", config, result, true)
}

fn spec(q: &Quiver, element: &str, v: Option<&str>, w: Option<&str>, out: &OutArgs) -> Result<bool> {
    let r = product_of_generators(q, &parse::word(q, element)?)?;
    let s = spec_map(q, &r, VarId::X)?;
    let mut config = quiver_config(q);
    config["element"] = json!(element);
    let mut result = json!({ "spec": rat(&s) });
    let mut pass = true;
    if let (Some(v), Some(w)) = (v, w) {
        let (v, w) = (parse::root(q, v)?, parse::root(q, w)?);
        if v.add(&w) != r.degree.to_root() {
            bail!("v + w = {} differs from the element degree {}", v.add(&w), r.degree);
        }
        config["v"] = json!(v);
        config["w"] = json!(w);
        let split = Split::canonical(&v);
        let t = two_point(q, &r, &v, &w, &split)?;
        let direct = two_point_direct(q, &r, &v, &w, &split)?;
        let bounds = pole_order_check(q, &t, false);
        let residue = match t.pole_diag {
            0 => Some(RatFunc::zero()),
            1 => Some(t.value.residue_on_diagonal()?),
            _ => None,
        };
        let routes_agree = t.value.equals(&direct.value);
        pass = routes_agree && bounds.is_ok();
        result["two_point"] = rat(&t.value);
        result["routes_agree"] = json!(routes_agree);
        result["poles"] = json!({ "x=y": t.pole_diag, "x=yq^2": t.pole_q2, "x=yq^-2": t.pole_qm2 });
        result["pole_bounds_hold"] = json!(bounds.is_ok());
        result["residue"] = residue.as_ref().map(rat).unwrap_or(Value::Null);
        result["residue_equals_spec"] = json!(residue.as_ref().is_some_and(|x| x.equals(&s)));
        result["zeta_ratio"] = rat(&zeta_ratio(q, &v, &w));
    }
    report(out, "spec", config, result, pass)
}

fn paths(op: PathsOp) -> Result<bool> {
    match op {
        PathsOp::Enumerate { size, bound, out } => {
            let size = parse::size(&size)?;
            let b = parse_legs(&bound)?;
            let found = enumerate_convex_above(size, &b)?;
            let text: Vec<String> = found.iter().map(|p| p.to_string()).collect();
            let config = json!({ "size": [size.0, size.1], "bound": format_legs(&b) });
            report(
                &out,
                "paths enumerate",
                config,
                json!({ "count": found.len(), "paths": text }),
                true,
            )
        }
        PathsOp::Convexify { legs, out } => {
            let l = parse_legs(&legs)?;
            let c = convexify(&l);
            let config = json!({ "legs": format_legs(&l) });
            report(
                &out,
                "paths convexify",
                config,
                json!({ "path": c.to_string(), "size": [c.size().0, c.size().1] }),
                true,
            )
        }
        PathsOp::Area { lower, upper, out } => {
            let (lo, up) = (parse_legs(&lower)?, parse_legs(&upper)?);
            let area = area_between(&lo, &up)?;
            let config = json!({ "lower": format_legs(&lo), "upper": format_legs(&up) });
            report(&out, "paths area", config, json!({ "area": area.to_string() }), true)
        }
    }
}

struct Check {
    id: String,
    pass: bool,
    detail: Value,
}

fn check(id: &str, pass: bool, detail: Value) -> Check {
    Check {
        id: id.to_string(),
        pass,
        detail,
    }
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("built-in polynomial")
}

/// Values for `z_{2,1}^0 * z_{1,1}^0` on `1 -> 2`, worked out by hand with the
/// edge denominator `z_{1,1} - z_{2,1}`.
fn golden_a2(q: &Quiver) -> Result<Vec<Check>> {
    let (x, y) = (VarId::X, VarId::Y);
    let (a1, a2) = (RootVec::simple(2, 0), RootVec::simple(2, 1));
    let mut checks = Vec::new();
    let cases = [
        (
            "golden_a2_e21_e11",
            vec![(1, 0), (0, 0)],
            RatFunc::new(poly("q*x^{-1}"), vec![], 1),
            "q*x^{-1}/(q - q^{-1})",
            RatFunc::new(poly("q^{2}*y^{-1} - x^{-1}"), vec![LinearBinomial::new(x, y, 0)], 2),
            "(q^{2}*y^{-1} - x^{-1})/((x - y)*(q - q^{-1})^{2})",
            RatFunc::new(poly("q*x^{-1}"), vec![], 1),
            "q*x^{-1}/(q - q^{-1})",
        ),
        (
            "golden_a2_e11_e21",
            vec![(0, 0), (1, 0)],
            RatFunc::zero(),
            "0",
            RatFunc::new(poly("q*x^{-1}*y^{-1}"), vec![], 2),
            "q*x^{-1}*y^{-1}/(q - q^{-1})^{2}",
            RatFunc::zero(),
            "0",
        ),
    ];
    for (id, word, spec_want, spec_text, two_want, two_text, res_want, res_text) in cases {
        let r = product_of_generators(q, &word)?;
        let s = spec_map(q, &r, x)?;
        let t = two_point(q, &r, &a1, &a2, &Split::canonical(&a1))?;
        let res = if t.pole_diag == 0 {
            RatFunc::zero()
        } else {
            t.value.residue_on_diagonal()?
        };
        let direct = two_point_direct(q, &r, &a1, &a2, &Split::canonical(&a1))?;
        let pass = s.equals(&spec_want)
            && s.to_string() == spec_text
            && t.value.equals(&two_want)
            && t.value.to_string() == two_text
            && res.equals(&res_want)
            && res.to_string() == res_text
            && direct.value.equals(&t.value)
            && res.equals(&s)
            && t.pole_q2 == 0
            && t.pole_qm2 == 0;
        checks.push(check(
            id,
            pass,
            json!({
                "spec": s.to_string(),
                "two_point": t.value.to_string(),
                "residue": res.to_string(),
                "poles": [t.pole_diag, t.pole_q2, t.pole_qm2],
                // the same quantities if the edge factor is written z_{2,1} - z_{1,1}
                "reversed_edge_factor": {
                    "spec": s.neg().to_string(),
                    "two_point": t.value.neg().to_string(),
                    "residue": res.neg().to_string(),
                },
            }),
        ));
    }
    let z = zeta_ratio(q, &a1, &a2);
    checks.push(check(
        "golden_a2_zeta_ratio",
        z.equals(&expected_zeta_ratio()),
        json!({ "zeta_ratio": z.to_string() }),
    ));
    Ok(checks)
}

fn selftest(q: &Quiver, out: &OutArgs) -> Result<bool> {
    let n = q.rank();
    let mut checks = Vec::new();
    if q.orientation.dynkin.to_string() == "A2" && q.orientation.has_edge(0, 1) {
        checks.extend(golden_a2(q)?);
    }

    let mut defects = 0;
    let mut instances = 0;
    for i in 0..n {
        for j in 0..n {
            for a in -1..=1 {
                for b in -1..=1 {
                    instances += 1;
                    defects += usize::from(!zeta_commutation_defect(q, i, j, a, b)?.is_zero());
                }
            }
            if q.cartan(i, j) == -1 {
                instances += 1;
                defects += usize::from(!serre_defect(q, i, j)?.is_zero());
            }
        }
    }
    checks.push(check(
        "relations",
        defects == 0,
        json!({ "instances": instances, "nonzero": defects }),
    ));

    let gens_ok = (0..n).all(|i| {
        pairing(q, &generator(n, i, 0), &[(i, 0)]).is_ok_and(|v| v == LaurentPoly::one())
            && pairing(q, &generator(n, i, 1), &[(i, 0)]).is_ok_and(|v| v.is_zero())
    });
    checks.push(check("generator_pairing", gens_ok, json!({})));

    let pairs = q.ar_quiver().minimal_pairs_any_refinement(&q.roots);
    let euler_ok = pairs
        .iter()
        .all(|p| q.euler_form(&p.alpha, &p.beta) == -1 && q.euler_form(&p.beta, &p.alpha) == 0);
    checks.push(check("minimal_pair_euler", euler_ok, json!({ "pairs": pairs.len() })));

    let small: Vec<MinimalPair> = pairs.into_iter().filter(|p| p.sum().height() <= 3).collect();
    let cfg = FusionConfig {
        window: 1,
        degrees: -1..=1,
        records: RecordMode::Failures,
    };
    let rep = verify_fusion(q, &small, &cfg)?;
    checks.push(check(
        "fusion_small",
        rep.all_pass(),
        json!({ "pairs": small.len(), "elements": rep.elements, "failures": rep.failures }),
    ));

    let pass = checks.iter().all(|c| c.pass);
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "id": c.id, "pass": c.pass, "detail": c.detail }))
        .collect();
    report(out, "selftest", quiver_config(q), json!({ "checks": list }), pass)
}
