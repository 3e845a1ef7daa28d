//! Building algebras and complexes from command-line flags.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use spencer_core::format::parse_algebra;
use spencer_core::{
    conformal_algebra, cr_algebra, space_form_algebra, RAlgebra, RSubspace, Rational, SpencerComplex, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    SpaceForm,
    Conformal,
    Cr,
}

/// Either a built-in model family or an algebra file.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Built-in model algebra.
    #[arg(long, value_enum, conflicts_with = "algebra")]
    pub family: Option<Family>,
    /// Algebra file in the text format.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Ambient dimension for space forms and the conformal algebra.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Curvature constant of the space form.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub k0: i64,
    /// Complex dimension for the CR family.
    #[arg(long)]
    pub m: Option<usize>,
    /// CR codimension.
    #[arg(long)]
    pub k: Option<usize>,
    /// Truncation degree of the CR prolongation.
    #[arg(long, default_value_t = 2)]
    pub cr_order: usize,
    /// Dimension of W, spanned by the leading coordinates of V.
    /// Defaults to all of V (CR: the distinguished hyperplane section).
    #[arg(long)]
    pub w: Option<usize>,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.with_context(|| format!("--{flag} is required for this family"))
}

impl Source {
    /// The algebra and the default choice of `W`.
    pub fn build(&self) -> Result<(RAlgebra, RSubspace)> {
        let (alg, default_w) = match (self.family, &self.algebra) {
            (Some(Family::SpaceForm), _) => {
                let a = space_form_algebra(need(self.dim, "dim")?, self.k0)?;
                let n = a.component_dim(-1);
                (a, Subspace::full(n))
            }
            (Some(Family::Conformal), _) => {
                let a = conformal_algebra(need(self.dim, "dim")?)?;
                let n = a.component_dim(-1);
                (a, Subspace::full(n))
            }
            (Some(Family::Cr), _) => {
                let (m, k) = (need(self.m, "m")?, need(self.k, "k")?);
                let (a, cs) = cr_algebra(m, k, self.cr_order)?;
                (a, Subspace::coordinate(2 * m, cs.w.iter().copied()))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let a: RAlgebra = parse_algebra(&text).with_context(|| format!("in {}", path.display()))?;
                let n = a.component_dim(-1);
                (a, Subspace::full(n))
            }
            (None, None) => bail!("give either --family or --algebra"),
        };
        let w = match self.w {
            Some(n) => {
                let v = alg.component_dim(-1);
                if n == 0 || n > v {
                    bail!("--w must lie in 1..={v}");
                }
                Subspace::coordinate(v, 0..n)
            }
            None => default_w,
        };
        Ok((alg, w))
    }

    pub fn complex(&self) -> Result<SpencerComplex<Rational>> {
        let (alg, w) = self.build()?;
        Ok(SpencerComplex::new(alg, w)?)
    }
}

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number `{t}`"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => {
            let a = parse(s)?;
            Ok(a..=a)
        }
    }
}
