//! JSON form of a fitted late-order model. Numbers that carry the working
//! precision travel as decimal strings; diagnostics are plain JSON numbers.

use serde::{Deserialize, Serialize};

use dpainleve_core::{
    ArithmeticContext, ComplexHP, LateOrderModel, PainleveParams, Sequence, SolutionFamily, SolutionKind,
    TypeAEstimate, TypeBEstimate,
};

use crate::error::{CliError, Result};

pub const FORMAT: &str = "late-order-model";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexText {
    pub re: String,
    pub im: String,
}

impl ComplexText {
    pub fn new(z: &ComplexHP, digits: usize) -> Self {
        ComplexText { re: z.re().to_decimal(digits), im: z.im().to_decimal(digits) }
    }

    pub fn parse(&self, ctx: &ArithmeticContext) -> Result<ComplexHP> {
        Ok(ctx.parse_complex(&self.re, &self.im)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub sign: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub alpha: ComplexText,
    pub beta: ComplexText,
    pub gamma: ComplexText,
}

impl ParamsDoc {
    pub fn new(p: &PainleveParams, digits: usize) -> Self {
        ParamsDoc {
            alpha: ComplexText::new(&p.alpha, digits),
            beta: ComplexText::new(&p.beta, digits),
            gamma: ComplexText::new(&p.gamma, digits),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub label: usize,
    pub slope: ComplexText,
    pub u: ComplexText,
    pub v: ComplexText,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Diagnostics {
    /// Averaged ratio sequence at the last usable `k`.
    Averaged {
        max_order: usize,
        final_k: usize,
        last_increment: f64,
        /// One Richardson step on top of the reported values.
        extrapolated: Vec<ComplexText>,
    },
    /// Four-by-four linear fit over consecutive even orders.
    LinearFit {
        max_order: usize,
        m_start: usize,
        condition: f64,
        check_start: Option<usize>,
        check_difference: Option<f64>,
        warning: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub format: String,
    pub version: u32,
    pub precision_bits: usize,
    pub family: FamilyDoc,
    pub params: ParamsDoc,
    /// `K` of the ansatz `Gamma(m/2 + K)`, as a fraction.
    pub k: [i64; 2],
    pub lambdas: Vec<ComplexText>,
    pub terms: Vec<TermDoc>,
    pub diagnostics: Diagnostics,
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Format("non-finite diagnostic".into()))
    }
}

fn base(model: &LateOrderModel, params: &PainleveParams, digits: usize, diagnostics: Diagnostics) -> ModelDocument {
    let ctx = params.context();
    let terms = model
        .singulants
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| TermDoc {
            label: e.label,
            slope: ComplexText::new(&e.slope, digits),
            u: ComplexText::new(&model.terms(Sequence::U)[i], digits),
            v: ComplexText::new(&model.terms(Sequence::V)[i], digits),
        })
        .collect();
    ModelDocument {
        format: FORMAT.into(),
        version: VERSION,
        precision_bits: ctx.bits(),
        family: FamilyDoc { kind: model.family.kind.to_string(), sign: model.family.sign.to_string() },
        params: ParamsDoc::new(params, ctx.decimal_digits()),
        k: [LateOrderModel::K.0, LateOrderModel::K.1],
        lambdas: model.lambdas.iter().map(|l| ComplexText::new(l, digits)).collect(),
        terms,
        diagnostics,
    }
}

pub fn type_a_document(
    est: &TypeAEstimate,
    params: &PainleveParams,
    max_order: usize,
    digits: usize,
) -> Result<ModelDocument> {
    let diag = Diagnostics::Averaged {
        max_order,
        final_k: est.final_k,
        last_increment: finite(est.last_increment)?,
        extrapolated: est.extrapolated.iter().map(|z| ComplexText::new(z, digits)).collect(),
    };
    Ok(base(&est.model, params, digits, diag))
}

pub fn type_b_document(
    est: &TypeBEstimate,
    params: &PainleveParams,
    max_order: usize,
    digits: usize,
) -> Result<ModelDocument> {
    let diag = Diagnostics::LinearFit {
        max_order,
        m_start: est.m_start,
        condition: finite(est.condition)?,
        check_start: est.check_start,
        check_difference: est.check_difference.map(finite).transpose()?,
        warning: est.warning.clone(),
    };
    Ok(base(&est.model, params, digits, diag))
}

impl ModelDocument {
    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut v = serde_json::to_vec_pretty(self)?;
        v.push(b'\n');
        Ok(v)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        if doc.format != FORMAT || doc.version != VERSION {
            return Err(CliError::Format(format!("unsupported model document {} v{}", doc.format, doc.version)));
        }
        Ok(doc)
    }

    pub fn family(&self) -> Result<SolutionFamily> {
        Ok(SolutionFamily::new(self.family.kind.parse()?, self.family.sign.parse()?))
    }

    /// Rebuilds the model at the precision it was written with.
    pub fn model(&self) -> Result<LateOrderModel> {
        let ctx = ArithmeticContext::new(self.precision_bits)?;
        let family = self.family()?;
        let l: Vec<ComplexHP> = self.lambdas.iter().map(|t| t.parse(&ctx)).collect::<Result<_>>()?;
        let lambdas: [ComplexHP; 4] =
            l.try_into().map_err(|_| CliError::Format("a model has exactly four lambdas".into()))?;
        Ok(match family.kind {
            SolutionKind::TypeA => LateOrderModel::type_a(&ctx, family, lambdas),
            SolutionKind::TypeB => LateOrderModel::type_b(&ctx, family, lambdas),
        })
    }

    pub fn params(&self) -> Result<PainleveParams> {
        let ctx = ArithmeticContext::new(self.precision_bits)?;
        Ok(PainleveParams::new(
            self.params.alpha.parse(&ctx)?,
            self.params.beta.parse(&ctx)?,
            self.params.gamma.parse(&ctx)?,
        )?)
    }
}
