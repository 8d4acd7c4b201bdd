//! Executes one parsed command line.

use std::collections::BTreeMap;

use rayon::prelude::*;

use dpainleve_core::stokes::grid_row;
use dpainleve_core::variant::fitted_k;
use dpainleve_core::*;

use crate::cli::{Cli, Command, FamilyArgs, MultiplierArgs, ParamArgs, SeedArgs, VariantOutput};
use crate::error::{CliError, Result};
use crate::formats::mapping::HierarchyEntry;
use crate::formats::model::{type_a_document, type_b_document, ComplexText, ParamsDoc};
use crate::formats::*;
use crate::io::{emit, read_text};

/// Default top orders of the late-order fits.
pub const TYPE_A_ORDER: usize = 250;
pub const TYPE_B_ORDER: usize = 500;

/// `re` or `re,im`.
pub fn parse_complex(ctx: &ArithmeticContext, s: &str) -> Result<ComplexHP> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    Ok(ctx.parse_complex(re.trim(), im.trim())?)
}

fn params(ctx: &ArithmeticContext, p: &ParamArgs) -> Result<PainleveParams> {
    Ok(PainleveParams::new(
        parse_complex(ctx, &p.alpha)?,
        parse_complex(ctx, &p.beta)?,
        parse_complex(ctx, &p.gamma)?,
    )?)
}

fn family(f: &FamilyArgs) -> SolutionFamily {
    SolutionFamily::new(f.kind, f.sign)
}

fn table(p: &PainleveParams, fam: SolutionFamily, max_order: usize) -> Result<CoefficientTable> {
    let mut t = CoefficientTable::new(p, fam)?;
    t.extend_to(max_order)?;
    Ok(t)
}

fn multipliers(ctx: &ArithmeticContext, kind: SolutionKind, m: &MultiplierArgs) -> Result<RemainderSpec> {
    match kind {
        SolutionKind::TypeA => {
            if m.special || m.f1.is_some() || m.f4.is_some() {
                return Err(CliError::Usage("--f1, --f4 and --special apply to Type B only".into()));
            }
            Ok(RemainderSpec::type_a(ctx))
        }
        SolutionKind::TypeB if m.special => Ok(RemainderSpec::type_b_special(ctx)),
        SolutionKind::TypeB => {
            let f1 = parse_complex(ctx, m.f1.as_deref().unwrap_or("1"))?;
            let f4 = parse_complex(ctx, m.f4.as_deref().unwrap_or("1"))?;
            Ok(RemainderSpec::type_b(ctx, f1, f4)?)
        }
    }
}

fn parse_window(s: &str) -> Result<Window> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("window '{s}' is not four numbers")))?;
    if v.len() != 4 {
        return Err(CliError::Usage(format!("window '{s}' is not four numbers")));
    }
    Ok(Window::new(v[0], v[1], v[2], v[3])?)
}

/// Fits the late-order model of `t` up to `max_order`.
pub fn fit_model(
    t: &CoefficientTable,
    max_order: usize,
    m_start: Option<usize>,
    digits: usize,
) -> Result<ModelDocument> {
    match t.family().kind {
        SolutionKind::TypeA => {
            if m_start.is_some() {
                return Err(CliError::Usage("--m-start applies to Type B only".into()));
            }
            let est = estimate_lambda_type_a(t, max_order & !1)?;
            type_a_document(&est, t.params(), max_order, digits)
        }
        SolutionKind::TypeB => {
            let est = estimate_lambda_type_b(t, m_start)?;
            if let Some(w) = &est.warning {
                eprintln!("warning: {w}");
            }
            type_b_document(&est, t.params(), max_order, digits)
        }
    }
}

fn default_order(kind: SolutionKind) -> usize {
    match kind {
        SolutionKind::TypeA => TYPE_A_ORDER,
        SolutionKind::TypeB => TYPE_B_ORDER,
    }
}

fn truncation(s: &str) -> Result<TruncationRule> {
    if s == "optimal" {
        return Ok(TruncationRule::Optimal);
    }
    s.parse::<usize>()
        .map(TruncationRule::Fixed)
        .map_err(|_| CliError::Usage(format!("truncation must be 'optimal' or an order, not '{s}'")))
}

fn points(ctx: &ArithmeticContext, list: &[String], range: Option<&str>) -> Result<Vec<ComplexHP>> {
    let mut out: Vec<ComplexHP> = list.iter().map(|s| parse_complex(ctx, s)).collect::<Result<_>>()?;
    if let Some(r) = range {
        let (a, b) = r
            .split_once(':')
            .and_then(|(a, b)| Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?)))
            .ok_or_else(|| CliError::Usage(format!("range '{r}' is not 'from:to'")))?;
        out.extend((a..=b).map(|k| ctx.complex(k, 0)));
    }
    if out.is_empty() {
        return Err(CliError::Usage("give at least one --n or a --range".into()));
    }
    Ok(out)
}

/// Highest order an optimally truncated sum at `n` reaches.
fn optimal_order(set: &SingulantSet, n: &ComplexHP) -> Result<usize> {
    let mag = n.abs();
    if mag.is_zero() {
        return Err(Error::InvalidArgument("n must be nonzero").into());
    }
    let eps = mag.recip();
    let unit = n.scale(&eps);
    let c_min = set
        .entries
        .iter()
        .min_by(|a, b| a.slope.abs().partial_cmp(&b.slope.abs()).expect("finite slopes"))
        .expect("non-empty");
    let (terms, _) = optimal_truncation(&c_min.slope, &unit, &eps)?;
    Ok(terms.saturating_sub(1))
}

struct Orbit {
    solution: LatticeSolution,
    seeds: Vec<(&'static str, String)>,
}

fn threshold(s: &SeedArgs) -> PoleThreshold {
    s.threshold.map(PoleThreshold::Absolute).unwrap_or_default()
}

fn orbit(ctx: &ArithmeticContext, p: &PainleveParams, s: &SeedArgs, n: i64, digits: usize) -> Result<Orbit> {
    let shift = match &s.shift {
        Some(z) => parse_complex(ctx, z)?,
        None => ctx.czero(),
    };
    let thr = threshold(s);
    if s.series_seed {
        let kind = s.kind.ok_or_else(|| CliError::Usage("--series-seed needs --type".into()))?;
        if n < 1 {
            return Err(CliError::Usage("--series-seed needs n >= 1".into()));
        }
        let t = table(p, SolutionFamily::new(kind, s.sign), s.seed_order)?;
        let at = |k: i64| -> Result<ComplexHP> {
            let site = &shift + &ctx.complex(k, 0);
            Ok(evaluate(&t, None, None, &site, TruncationRule::Fixed(s.seed_order))?.lattice_value(Parity::of(k)))
        };
        let (top, above) = (at(n)?, at(n + 1)?);
        let solution = iterate_backward_from(p, &shift, n, &top, &above, 0, thr)?;
        let seeds = vec![
            ("seed", "series".to_string()),
            ("seed_type", kind.to_string()),
            ("seed_sign", s.sign.to_string()),
            ("seed_order", s.seed_order.to_string()),
            ("seed_top", n.to_string()),
        ];
        return Ok(Orbit { solution, seeds });
    }
    let (Some(w0), Some(w1)) = (&s.w0, &s.w1) else {
        return Err(CliError::Usage("give --w0 and --w1, or --series-seed".into()));
    };
    let (a, b) = (parse_complex(ctx, w0)?, parse_complex(ctx, w1)?);
    let solution = iterate_forward_from(p, &shift, 0, &a, &b, n, thr)?;
    let seeds = vec![
        ("seed", "initial".to_string()),
        ("w0_re", a.re().to_decimal(digits)),
        ("w0_im", a.im().to_decimal(digits)),
        ("w1_re", b.re().to_decimal(digits)),
        ("w1_im", b.im().to_decimal(digits)),
    ];
    Ok(Orbit { solution, seeds })
}

fn pole_check(o: &LatticeSolution) -> Result<()> {
    if o.has_pole() {
        Err(CliError::Pole(o.pole_flags.clone()))
    } else {
        Ok(())
    }
}

fn variant_singulant_csv(ctx: &ArithmeticContext, gamma: &ComplexHP, kind: SolutionKind, digits: usize) -> Result<Vec<u8>> {
    let set = variant_singulants(gamma, kind);
    let mut h = Header::new("variant-singulants", ctx);
    h.push("type", kind);
    h.push("variant", true);
    h.push_complex("gamma", gamma, ctx.decimal_digits());
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["label", "re", "im", "cosh_defect"])?;
        for (e, d) in set.entries.iter().zip(set.eikonal_defects()) {
            w.write_record([
                e.label.to_string(),
                e.slope.re().to_decimal(digits),
                e.slope.im().to_decimal(digits),
                d.to_decimal(6),
            ])?;
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}

fn variant_k_csv(t: &CoefficientTable, gamma: &ComplexHP, digits: usize) -> Result<Vec<u8>> {
    let ctx = t.context();
    let set = variant_singulants(gamma, t.family().kind);
    let mut h = Header::new("variant-k", &ctx);
    h.push_family(t.family());
    h.push("variant", true);
    h.push_params(t.params(), ctx.decimal_digits());
    h.push("note", "diagnostic fit from a(m+2)/a(m) against the first singulant");
    let mut out = h.render().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["m", "k_re", "k_im"])?;
        for m in 1..t.max_order().saturating_sub(1) {
            let row = match fitted_k(t, &set, Sequence::U, m) {
                Ok(k) => [m.to_string(), k.re().to_decimal(digits), k.im().to_decimal(digits)],
                Err(Error::Domain(_)) => [m.to_string(), "NA".into(), "NA".into()],
                Err(e) => return Err(e.into()),
            };
            w.write_record(&row)?;
        }
        w.flush().map_err(CliError::Stdout)?;
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<()> {
    let ctx = ArithmeticContext::new(cli.precision)?;
    let digits = cli.digits.unwrap_or(ctx.decimal_digits());
    if digits == 0 {
        return Err(CliError::Usage("--digits must be positive".into()));
    }
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Coeffs { params: pa, family: fa, max_order } => {
            let t = table(&params(&ctx, pa)?, family(fa), *max_order)?;
            emit(out, &write_coefficients(&t, cli.digits)?)
        }
        Command::Lambda { params: pa, family: fa, max_order, m_start } => {
            let fam = family(fa);
            let m = max_order.unwrap_or(default_order(fam.kind));
            // odd orders ride along so the table ends on an odd index for Type A
            let t = table(&params(&ctx, pa)?, fam, m | 1)?;
            emit(out, &fit_model(&t, m, *m_start, digits)?.to_json()?)
        }
        Command::LambdaFrom { input, max_order, m_start } => {
            let t = read_coefficients(&read_text(input)?)?;
            if t.expansion() != Expansion::HalfPower {
                return Err(CliError::Usage("late-order fits need a dP1 table, not a variant one".into()));
            }
            let m = max_order.unwrap_or(t.max_order());
            let d = cli.digits.unwrap_or(t.context().decimal_digits());
            emit(out, &fit_model(&t, m, *m_start, d)?.to_json()?)
        }
        Command::StokesMap { kind, window, res, multipliers: ma } => {
            let w = parse_window(window)?;
            if *res < 2 {
                return Err(CliError::Usage("--res must be at least 2".into()));
            }
            let spec = multipliers(&ctx, *kind, ma)?;
            let set = singulants(&ctx, *kind);
            let rows: Vec<Vec<GridPoint>> =
                (0..*res).into_par_iter().map(|j| grid_row(&set, &w, *res, &spec, &ctx, j)).collect::<std::result::Result<_, _>>()?;
            let pts: Vec<GridPoint> = rows.into_iter().flatten().collect();
            emit(out, &write_grid(&ctx, &set, &spec, &w, *res, &pts)?)
        }
        Command::Evaluate { params: pa, family: fa, points: list, range, truncation: tr, remainder, model, multipliers: ma } => {
            let p = params(&ctx, pa)?;
            let fam = family(fa);
            let rule = truncation(tr)?;
            let ns = points(&ctx, list, range.as_deref())?;
            let set = singulants(&ctx, fam.kind);
            let mut need = match rule {
                TruncationRule::Fixed(m) => m,
                TruncationRule::Optimal => {
                    let mut top = 0;
                    for n in &ns {
                        if n.on_branch_cut() {
                            return Err(Error::BranchCut.into());
                        }
                        top = top.max(optimal_order(&set, n)?);
                    }
                    top
                }
            };
            let (model, spec) = if *remainder {
                let spec = multipliers(&ctx, fam.kind, ma)?;
                let doc = match model {
                    Some(path) => {
                        let doc = ModelDocument::from_json(&read_text(path)?)?;
                        if doc.family()? != fam || doc.params()? != p {
                            return Err(CliError::Usage("model file was fitted for other parameters".into()));
                        }
                        if doc.precision_bits != ctx.bits() {
                            return Err(Error::PrecisionMismatch { left: doc.precision_bits, right: ctx.bits() }.into());
                        }
                        doc
                    }
                    None => {
                        let m = default_order(fam.kind);
                        need = need.max(m | 1);
                        fit_model(&table(&p, fam, m | 1)?, m, None, digits)?
                    }
                };
                (Some(doc.model()?), Some(spec))
            } else {
                (None, None)
            };
            let t = table(&p, fam, need)?;
            let rows: Vec<Evaluation> = ns
                .par_iter()
                .map(|n| evaluate(&t, model.as_ref(), spec.as_ref(), n, rule))
                .collect::<std::result::Result<_, _>>()?;
            let meta = EvaluationMeta { table: &t, truncation: tr.clone(), remainder: *remainder };
            emit(out, &write_evaluations(&ctx, &meta, &rows, digits)?)
        }
        Command::Iterate { params: pa, seeds, n } => {
            let p = params(&ctx, pa)?;
            let o = orbit(&ctx, &p, seeds, *n, digits)?;
            let meta: Vec<(&str, String)> = o.seeds.iter().map(|(k, v)| (*k, v.clone())).collect();
            emit(out, &write_orbit(&o.solution, None, &meta, digits)?)?;
            pole_check(&o.solution)
        }
        Command::Compare { params: pa, seeds, n, order, from } => {
            let p = params(&ctx, pa)?;
            let kind = seeds.kind.ok_or_else(|| CliError::Usage("compare needs --type for the prediction".into()))?;
            let mut o = orbit(&ctx, &p, seeds, *n, digits)?;
            let t = table(&p, SolutionFamily::new(kind, seeds.sign), *order)?;
            let shift = o.solution.shift.clone();
            let first = (*from).max(o.solution.first_index().unwrap_or(0));
            let preds: Vec<(i64, ComplexHP)> = (first..=*n)
                .into_par_iter()
                .map(|k| {
                    let site = &shift + &ctx.complex(k, 0);
                    evaluate(&t, None, None, &site, TruncationRule::Fixed(*order)).map(|e| (k, e.lattice_value(Parity::of(k))))
                })
                .collect::<std::result::Result<_, _>>()?;
            let report = compare(&mut o.solution, &preds, *order)?;
            if let Some(e) = report.fitted_exponent {
                eprintln!("fitted exponent {e:.3} (series error expected to fall like n^-{})", report.expected_exponent);
            }
            let mut meta: Vec<(&str, String)> = o.seeds.iter().map(|(k, v)| (*k, v.clone())).collect();
            meta.push(("compare_type", kind.to_string()));
            meta.push(("compare_sign", seeds.sign.to_string()));
            meta.push(("compare_order", order.to_string()));
            emit(out, &write_orbit(&o.solution, Some(&report), &meta, digits)?)?;
            pole_check(&o.solution)
        }
        Command::Variant { params: pa, family: fa, max_order, what } => {
            let vp = VariantParams(params(&ctx, pa)?);
            let fam = family(fa);
            match what {
                VariantOutput::Singulants => emit(out, &variant_singulant_csv(&ctx, &vp.0.gamma, fam.kind, digits)?),
                VariantOutput::Coeffs => {
                    let t = variant_coefficients(&vp, fam, *max_order)?;
                    emit(out, &write_coefficients(&t, cli.digits)?)
                }
                VariantOutput::K => {
                    let t = variant_coefficients(&vp, fam, *max_order)?;
                    emit(out, &variant_k_csv(&t, &vp.0.gamma, digits)?)
                }
            }
        }
        Command::MapP4 { z, mu, hierarchy } => {
            let (z, mu) = (parse_complex(&ctx, z)?, parse_complex(&ctx, mu)?);
            let p = map_p4(&z, &mu)?;
            let hierarchy = match hierarchy {
                Some(top) if *top < 0 => return Err(CliError::Usage("--hierarchy must be non-negative".into())),
                Some(top) => (0..=*top)
                    .map(|n| {
                        let (a, b) = p4_parameters(&mu, n);
                        HierarchyEntry { n, a: ComplexText::new(&a, digits), b: ComplexText::new(&b, digits) }
                    })
                    .collect(),
                None => Vec::new(),
            };
            let inputs = BTreeMap::from([
                ("z".to_string(), ComplexText::new(&z, digits)),
                ("mu".to_string(), ComplexText::new(&mu, digits)),
            ]);
            mapping_out(out, &ctx, "p4", inputs, &p, hierarchy, digits)
        }
        Command::MapFreud { kappa, mu } => {
            let (k, mu) = (parse_complex(&ctx, kappa)?, parse_complex(&ctx, mu)?);
            let p = map_freud(&k, &mu)?;
            let inputs = BTreeMap::from([
                ("kappa".to_string(), ComplexText::new(&k, digits)),
                ("mu".to_string(), ComplexText::new(&mu, digits)),
            ]);
            mapping_out(out, &ctx, "freud", inputs, &p, Vec::new(), digits)
        }
    }
}

fn mapping_out(
    out: Option<&std::path::Path>,
    ctx: &ArithmeticContext,
    source: &str,
    inputs: BTreeMap<String, ComplexText>,
    p: &PainleveParams,
    hierarchy: Vec<HierarchyEntry>,
    digits: usize,
) -> Result<()> {
    let doc = MappingDocument {
        format: mapping::FORMAT.into(),
        precision_bits: ctx.bits(),
        source: source.into(),
        inputs,
        params: ParamsDoc::new(p, digits),
        hierarchy,
    };
    let mut v = serde_json::to_vec_pretty(&doc)?;
    v.push(b'\n');
    emit(out, &v)
}
