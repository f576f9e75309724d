//! Module descriptors from command-line flags.

use std::sync::Arc;

use clap::{Args, ValueEnum};
use toro::field::Monomial;
use toro::fock::FockModule;
use toro::macmahon::*;
use toro::partitions::{ColorContext, Partition};
use toro::rep::ModuleHandle;
use toro::tensor::{fock_pair, vector_pair};
use toro::vector::VectorRep;

use crate::error::CliError;
use crate::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Fock,
    Vector,
    VectorBar,
    TensorVv,
    TensorFf,
    N,
    MacmahonVacuum,
    Macmahon,
    MacmahonGeneral,
    Special,
    G,
}

#[derive(Clone, Debug, Args)]
pub struct ColorArgs {
    /// Number of colors, at least 3.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Color of the corner box, `0 <= k < n`.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

impl ColorArgs {
    pub fn ctx(&self) -> Result<ColorContext, CliError> {
        check_color(self.n, self.k)?;
        Ok(ColorContext::new(self.n, self.k as i64).expect("n checked"))
    }
}

pub fn check_color(n: usize, k: usize) -> Result<(), CliError> {
    if n < 3 {
        return Err(CliError::invalid("UnsupportedN", format!("n = {n}; only n >= 3 is supported")));
    }
    if k >= n {
        return Err(CliError::invalid("BadColor", format!("k = {k} must be below n = {n}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Args)]
pub struct ModuleArgs {
    #[arg(long, value_enum)]
    pub module: ModuleKind,
    #[command(flatten)]
    pub color: ColorArgs,
    /// Color of the second tensor factor.
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    /// Anchor of a vector or Fock module, e.g. `q1^2`.
    #[arg(long)]
    pub u: Option<String>,
    /// Spectral ratio of the second tensor factor.
    #[arg(long)]
    pub ratio: Option<String>,
    #[arg(long, default_value = "")]
    pub alpha: String,
    #[arg(long, default_value = "")]
    pub beta: String,
    #[arg(long, default_value = "")]
    pub gamma: String,
    #[arg(long, default_value = "")]
    pub mu: String,
    #[arg(long, default_value = "")]
    pub nu: String,
    /// Value of `K`; symbolic when omitted.
    #[arg(long = "k-value")]
    pub kvalue: Option<String>,
    /// Special box `x,y,z`.
    #[arg(long = "box")]
    pub special_box: Option<String>,
    /// Shift `t` of the special-box quotient.
    #[arg(long, default_value_t = 0)]
    pub t: usize,
}

pub struct Built {
    pub handle: ModuleHandle,
    pub kind: ModuleKind,
    pub mu: Partition,
    pub nu: Partition,
}

impl ModuleArgs {
    fn kspec(&self) -> Result<KSpec, CliError> {
        Ok(match &self.kvalue {
            None => KSpec::Symbolic,
            Some(s) => KSpec::Value(parse::monomial(s)?),
        })
    }

    fn anchor(&self) -> Result<Monomial, CliError> {
        self.u.as_deref().map_or(Ok(Monomial::ONE), parse::monomial)
    }

    fn ratio(&self) -> Result<Monomial, CliError> {
        let s = self.ratio.as_deref().ok_or_else(|| CliError::invalid("MissingArgument", "--ratio is required"))?;
        parse::monomial(s)
    }

    fn reject(&self, flag: &str, set: bool) -> Result<(), CliError> {
        if set {
            return Err(CliError::invalid("UnusedArgument", format!("--{flag} does not apply to this module")));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Built, CliError> {
        let ctx = self.color.ctx()?;
        let (n, k) = (self.color.n, self.color.k);
        let alpha = parse::partition(&self.alpha)?;
        let beta = parse::partition(&self.beta)?;
        let gamma = parse::partition(&self.gamma)?;
        let mu = parse::partition(&self.mu)?;
        let nu = parse::partition(&self.nu)?;
        let kind = self.module;
        let anchored = matches!(kind, ModuleKind::Fock | ModuleKind::Vector | ModuleKind::VectorBar);
        self.reject("u", self.u.is_some() && !anchored)?;
        let paired = matches!(kind, ModuleKind::TensorVv | ModuleKind::TensorFf);
        self.reject("ratio", self.ratio.is_some() && !paired)?;
        let handle: ModuleHandle = match kind {
            ModuleKind::Fock => Arc::new(FockModule::new(ctx, self.anchor()?)),
            ModuleKind::Vector => Arc::new(VectorRep::new(ctx, self.anchor()?)),
            ModuleKind::VectorBar => Arc::new(VectorRep::barred(ctx, self.anchor()?)),
            ModuleKind::TensorVv => {
                check_color(n, self.l)?;
                Arc::new(vector_pair(n, k, self.l, self.ratio()?)?)
            }
            ModuleKind::TensorFf => {
                check_color(n, self.l)?;
                Arc::new(fock_pair(n, k, self.l, self.ratio()?)?)
            }
            ModuleKind::N => Arc::new(n_module(&alpha, &beta, k, n)?),
            ModuleKind::MacmahonVacuum => Arc::new(vacuum_macmahon(k, n, self.kspec()?)?),
            ModuleKind::Macmahon => Arc::new(gamma_macmahon(k, n, self.kspec()?, &gamma)?),
            ModuleKind::MacmahonGeneral => Arc::new(general_macmahon(&alpha, &beta, &gamma, k, n, self.kspec()?)?),
            ModuleKind::Special => {
                let b = self
                    .special_box
                    .as_deref()
                    .ok_or_else(|| CliError::invalid("MissingArgument", "--box is required"))?;
                let desc = MacmahonDescriptor {
                    kind: MacmahonKind::General { alpha, beta, gamma },
                    n,
                    k,
                    kspec: self.kspec()?,
                };
                Arc::new(special_k_quotient(&desc, parse::box3(b)?, self.t)?)
            }
            ModuleKind::G => Arc::new(g_module(&mu, &nu, k, n)?),
        };
        Ok(Built { handle, kind, mu, nu })
    }
}
