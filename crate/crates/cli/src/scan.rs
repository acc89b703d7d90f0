//! Textual point-set specifications, e.g.
//! `axis=x,through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200`.

use std::str::FromStr;

use tetfield::{Axis, EvalSet, Vec3};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSpec {
    pub axis: Axis,
    pub through: Vec3,
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: Vec3,
    pub max: Vec3,
    pub counts: [usize; 3],
}

fn fields(s: &str) -> Result<Vec<(&str, &str)>, String> {
    s.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| format!("expected key=value, got `{kv}`"))
        })
        .collect()
}

fn numbers<const N: usize>(key: &str, raw: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != N {
        return Err(format!(
            "`{key}` needs {N} colon-separated values, got `{raw}`"
        ));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|e| format!("`{key}`: `{p}`: {e}"))?;
    }
    Ok(out)
}

fn counts<const N: usize>(key: &str, raw: &str) -> Result<[usize; N], String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != N {
        return Err(format!(
            "`{key}` needs {N} colon-separated counts, got `{raw}`"
        ));
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .trim()
            .parse()
            .map_err(|e| format!("`{key}`: `{p}`: {e}"))?;
    }
    Ok(out)
}

fn take<'a>(pairs: &[(&str, &'a str)], key: &str) -> Result<&'a str, String> {
    let mut hits = pairs.iter().filter(|(k, _)| *k == key);
    match (hits.next(), hits.next()) {
        (Some((_, v)), None) => Ok(v),
        (None, _) => Err(format!("missing `{key}`")),
        (Some(_), Some(_)) => Err(format!("`{key}` given twice")),
    }
}

fn reject_unknown(pairs: &[(&str, &str)], known: &[&str]) -> Result<(), String> {
    match pairs.iter().find(|(k, _)| !known.contains(k)) {
        Some((k, _)) => Err(format!(
            "unknown key `{k}` (expected one of {})",
            known.join(", ")
        )),
        None => Ok(()),
    }
}

impl FromStr for LineSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let pairs = fields(s)?;
        reject_unknown(&pairs, &["axis", "through", "range", "n"])?;
        let axis = take(&pairs, "axis")?.parse()?;
        let through = Vec3::from(numbers::<3>("through", take(&pairs, "through")?)?);
        let [start, end] = numbers::<2>("range", take(&pairs, "range")?)?;
        let [count] = counts::<1>("n", take(&pairs, "n")?)?;
        Ok(Self {
            axis,
            through,
            start,
            end,
            count,
        })
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let pairs = fields(s)?;
        reject_unknown(&pairs, &["min", "max", "n"])?;
        Ok(Self {
            min: Vec3::from(numbers::<3>("min", take(&pairs, "min")?)?),
            max: Vec3::from(numbers::<3>("max", take(&pairs, "max")?)?),
            counts: counts::<3>("n", take(&pairs, "n")?)?,
        })
    }
}

impl LineSpec {
    pub fn eval_set(&self) -> Result<EvalSet, CliError> {
        Ok(EvalSet::line(
            self.axis,
            self.through,
            self.start,
            self.end,
            self.count,
        )?)
    }
}

impl GridSpec {
    pub fn eval_set(&self) -> Result<EvalSet, CliError> {
        Ok(EvalSet::grid(self.min, self.max, self.counts)?)
    }
}
