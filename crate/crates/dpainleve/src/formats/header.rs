//! `# key=value` metadata lines at the top of every CSV artifact.

use dpainleve_core::{ArithmeticContext, ComplexHP, PainleveParams, SolutionFamily};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Header {
    entries: Vec<(String, String)>,
}

impl Header {
    pub fn new(format: &str, ctx: &ArithmeticContext) -> Self {
        let mut h = Header::default();
        h.push("format", format);
        h.push("precision_bits", ctx.bits());
        h
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn push_complex(&mut self, key: &str, z: &ComplexHP, digits: usize) {
        self.push(&format!("{key}_re"), z.re().to_decimal(digits));
        self.push(&format!("{key}_im"), z.im().to_decimal(digits));
    }

    pub fn push_family(&mut self, family: SolutionFamily) {
        self.push("type", family.kind);
        self.push("sign", family.sign);
    }

    pub fn push_params(&mut self, p: &PainleveParams, digits: usize) {
        self.push_complex("alpha", &p.alpha, digits);
        self.push_complex("beta", &p.beta, digits);
        self.push_complex("gamma", &p.gamma, digits);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| CliError::Format(format!("missing header entry '{key}'")))
    }

    pub fn context(&self) -> Result<ArithmeticContext> {
        let bits = self
            .require("precision_bits")?
            .parse::<usize>()
            .map_err(|_| CliError::Format("precision_bits is not an integer".into()))?;
        Ok(ArithmeticContext::new(bits)?)
    }

    pub fn complex(&self, ctx: &ArithmeticContext, key: &str) -> Result<ComplexHP> {
        let re = self.require(&format!("{key}_re"))?;
        let im = self.require(&format!("{key}_im"))?;
        Ok(ctx.parse_complex(re, im)?)
    }

    pub fn family(&self) -> Result<SolutionFamily> {
        Ok(SolutionFamily::new(self.require("type")?.parse()?, self.require("sign")?.parse()?))
    }

    pub fn params(&self, ctx: &ArithmeticContext) -> Result<PainleveParams> {
        Ok(PainleveParams::new(
            self.complex(ctx, "alpha")?,
            self.complex(ctx, "beta")?,
            self.complex(ctx, "gamma")?,
        )?)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str("# ");
            s.push_str(k);
            s.push('=');
            s.push_str(v);
            s.push('\n');
        }
        s
    }

    /// Splits leading `#` lines off `text`; returns the header and the rest.
    pub fn parse(text: &str) -> Result<(Header, &str)> {
        let mut h = Header::default();
        let mut rest = text;
        while let Some(line) = rest.strip_prefix('#') {
            let end = line.find('\n').map(|i| i + 1).unwrap_or(line.len());
            let (entry, tail) = line.split_at(end);
            let entry = entry.trim();
            let (k, v) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Format(format!("header line without '=': {entry}")))?;
            h.push(k.trim(), v.trim());
            rest = tail;
        }
        Ok((h, rest))
    }
}
