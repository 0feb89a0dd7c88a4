//! `start:stop:count` grid specifications.

use std::fmt;
use std::str::FromStr;

use eitsqueeze_core::params::linspace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}:{:e}:{}", self.start, self.stop, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("`{s}`: expected start:stop:count"));
        };
        let num = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        };
        let (start, stop) = (num(start)?, num(stop)?);
        let count: usize = count
            .parse()
            .map_err(|_| format!("`{count}` is not a point count"))?;
        if count < 1 {
            return Err("count must be at least 1".into());
        }
        if stop < start {
            return Err("stop must not be below start".into());
        }
        if count > 1 && stop == start {
            return Err("a grid with several points needs stop > start".into());
        }
        Ok(GridSpec { start, stop, count })
    }
}
