//! Argument syntax: ring names or files, group specs, subgroup specs, objects.

use std::path::Path;

use fusioncat_core::catalog::build_named;
use fusioncat_core::center::{AbelianGroup, FiniteGroup, MetricGroup, Subgroup};
use fusioncat_core::{CatalogEntry, Error, FusionRing};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::CliError;

/// A catalog name, or a path to a ring file when no catalog entry matches.
pub fn ring_entry(spec: &str) -> Result<CatalogEntry, CliError> {
    match build_named(spec) {
        Ok(e) => Ok(e),
        Err(Error::UnknownName(_)) if Path::new(spec).is_file() => {
            Ok(CatalogEntry::from_ring(ring_file(spec)?)?)
        }
        Err(e) => Err(e.into()),
    }
}

/// Like [`ring_entry`] but skips verification of file-loaded rings.
pub fn raw_ring(spec: &str) -> Result<FusionRing, CliError> {
    match build_named(spec) {
        Ok(e) => Ok(e.ring),
        Err(Error::UnknownName(_)) if Path::new(spec).is_file() => ring_file(spec),
        Err(e) => Err(e.into()),
    }
}

fn ring_file(path: &str) -> Result<FusionRing, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    Ok(FusionRing::from_text(&text)?)
}

/// Cyclic factors from `Z/n`, `Z/a x Z/b`, `zN` or `1`.
pub fn abelian_factors(spec: &str) -> Result<Vec<u64>, CliError> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    if lower == "1" || lower == "trivial" {
        return Ok(vec![]);
    }
    lower
        .split('x')
        .map(|part| {
            let digits = part
                .strip_prefix("z/")
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| CliError::Usage(format!("bad group factor `{part}` in `{spec}`")))?;
            digits
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad group factor `{part}` in `{spec}`")))
        })
        .collect()
}

pub fn abelian_group(spec: &str) -> Result<AbelianGroup, CliError> {
    Ok(AbelianGroup::new(&abelian_factors(spec)?)?)
}

/// Any finite group: abelian specs, or catalog names such as `s3`, `a4`, `q8`.
pub fn finite_group(spec: &str) -> Result<FiniteGroup, CliError> {
    match abelian_factors(spec) {
        Ok(f) => Ok(FiniteGroup::abelian(&f)?),
        Err(_) => Ok(FiniteGroup::named(spec)?),
    }
}

/// Subgroup of `m` from generators separated by `;` or `+`. A generator is a
/// residue tuple `(a,b,...)`, `0`/`1` for the identity, or a toric-code
/// anyon name.
pub fn subgroup_spec(m: &MetricGroup, spec: &str) -> Result<Subgroup, CliError> {
    let mut gens = Vec::new();
    for tok in spec.split([';', '+']).map(str::trim).filter(|t| !t.is_empty()) {
        gens.push(element(m, tok)?);
    }
    Ok(Subgroup::generated_by(m.group(), &gens)?)
}

fn element(m: &MetricGroup, tok: &str) -> Result<usize, CliError> {
    let g = m.group();
    if tok == "0" || tok == "1" {
        return Ok(0);
    }
    if m.is_toric_code() {
        if let Some(x) = (0..g.order()).find(|&x| m.element_name(x) == tok) {
            return Ok(x);
        }
    }
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| CliError::Usage(format!("bad element `{tok}`; expected (a,b,...)")))?;
    let coords: Vec<i64> = inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad coordinate in `{tok}`")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != g.rank() {
        return Err(CliError::Usage(format!(
            "`{tok}` has {} coordinates, the group has {}",
            coords.len(),
            g.rank()
        )));
    }
    Ok(g.encode_signed(&coords))
}

/// A label or a direct sum of labels joined by `+` or `⊕`.
pub fn object(ring: &FusionRing, spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(['+', '⊕'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| ring.label_index(t).map_err(CliError::from))
        .collect()
}

/// A comma-separated list of labels.
pub fn word(ring: &FusionRing, spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| ring.label_index(t).map_err(CliError::from))
        .collect()
}

/// Comma-separated positive integers.
pub fn factors(spec: &str) -> Result<Vec<u64>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad factor `{t}`")))
        })
        .collect()
}

/// A non-negative rational weight: `a/b`, a decimal, or an integer.
pub fn weight(tok: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("bad weight `{tok}`"));
    let tok = tok.trim();
    if let Some((n, d)) = tok.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = tok.split_once('.').unwrap_or((tok, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(digits, scale))
}

/// Weights per label from `w*X + w*Y + ...`; a bare label has weight 1.
pub fn combo(ring: &FusionRing, spec: &str) -> Result<Vec<BigRational>, CliError> {
    let mut w = vec![BigRational::zero(); ring.rank()];
    for term in spec.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => (weight(c)?, l.trim()),
            None => (BigRational::from_integer(1.into()), term),
        };
        let x = ring.label_index(label)?;
        w[x] += coef;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fusioncat_core::center::center_of_pointed;

    #[test]
    fn group_specs() {
        assert_eq!(abelian_factors("Z/2").unwrap(), vec![2]);
        assert_eq!(abelian_factors("Z/2 x Z/4").unwrap(), vec![2, 4]);
        assert_eq!(abelian_factors("z6").unwrap(), vec![6]);
        assert!(abelian_factors("s3").is_err());
        assert_eq!(finite_group("a4").unwrap().order(), 12);
        assert_eq!(finite_group("Z/2 x Z/2").unwrap().order(), 4);
    }

    #[test]
    fn subgroup_specs() {
        let m = center_of_pointed(&AbelianGroup::cyclic(2).unwrap());
        assert_eq!(subgroup_spec(&m, "1+e").unwrap().order(), 2);
        assert_eq!(subgroup_spec(&m, "(1,0);(0,1)").unwrap().order(), 4);
        assert!(subgroup_spec(&m, "(1,0,0)").is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight("1/2").unwrap(), weight("0.5").unwrap());
        assert_eq!(weight("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(weight("1/0").is_err());
        let ising = fusioncat_core::catalog::build_named("ising").unwrap().ring;
        let c = combo(&ising, "1/2*1 + 1/2*ψ").unwrap();
        assert_eq!(c[1], weight("0.5").unwrap());
    }
}
