//! Key=value configuration files, value parsers and the CLI error type.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use zonekit::ZoneError;

pub const KEYS: &[&str] = &[
    "lambda", "k", "charge", "order", "out_dir", "a", "sigma", "t", "grid", "zones", "pmax", "seed", "samples",
    "n_slices", "horizon", "kappa", "h", "q", "basis", "max_degree", "variant", "suite", "x", "y", "times", "temps",
    "rmax", "method", "curve",
];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Zone(ZoneError),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Zone(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<ZoneError> for CliError {
    fn from(e: ZoneError) -> Self {
        CliError::Zone(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", n + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Flag value if given, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|e| CliError::Usage(format!("config key `{key}`: cannot parse `{raw}`: {e}"))),
            None => Ok(default),
        }
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(key)
            .map(|raw| {
                raw.parse()
                    .map_err(|e| CliError::Usage(format!("config key `{key}`: cannot parse `{raw}`: {e}")))
            })
            .transpose()
    }
}

/// `lo:hi:step`, inclusive of `hi` up to rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(format!("expected lo:hi:step, got `{s}`"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("need lo <= hi and step > 0, got `{s}`"));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        if n > 1_000_000 {
            return Err(format!("grid `{s}` has too many points"));
        }
        Ok(Grid((0..=n).map(|i| lo + step * i as f64).collect()))
    }
}

/// `a..b` (exclusive), `a..=b` or a single index.
#[derive(Clone, Debug, PartialEq)]
pub struct ZoneRange(pub Vec<usize>);

impl FromStr for ZoneRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
        let range = if let Some((lo, hi)) = s.split_once("..=") {
            num(lo)?..num(hi)? + 1
        } else if let Some((lo, hi)) = s.split_once("..") {
            num(lo)?..num(hi)?
        } else {
            let a = num(s)?;
            a..a + 1
        };
        if range.is_empty() {
            return Err(format!("empty zone range `{s}`"));
        }
        Ok(ZoneRange(range.collect()))
    }
}

/// Comma-separated real coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub Vec<f64>);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}")))
            .collect::<Result<_, _>>()
            .map(Point)
    }
}

pub fn point_or_origin(p: Option<Point>, k: usize, name: &str) -> CliResult<Vec<f64>> {
    match p {
        None => Ok(vec![0.0; k]),
        Some(Point(v)) if v.len() == k => Ok(v),
        Some(Point(v)) => Err(CliError::Usage(format!("--{name} needs {k} coordinates, got {}", v.len()))),
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        let g: Grid = "-2:2:0.1".parse().unwrap();
        assert_eq!(g.0.len(), 41);
        assert_eq!(g.0[0], -2.0);
        assert!((g.0[40] - 2.0).abs() < 1e-12);
        assert!("1:0:0.1".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
    }

    #[test]
    fn zone_ranges() {
        assert_eq!("0..3".parse::<ZoneRange>().unwrap().0, vec![0, 1, 2]);
        assert_eq!("1..=2".parse::<ZoneRange>().unwrap().0, vec![1, 2]);
        assert_eq!("4".parse::<ZoneRange>().unwrap().0, vec![4]);
        assert!("3..3".parse::<ZoneRange>().is_err());
    }

    #[test]
    fn config_precedence() {
        let cfg = Config::parse("# defaults\nlambda = 2.5\nk=4\n\nout-dir = out # trailing\n").unwrap();
        assert_eq!(cfg.pick(None, "lambda", 1.0).unwrap(), 2.5);
        assert_eq!(cfg.pick(Some(0.5), "lambda", 1.0).unwrap(), 0.5);
        assert_eq!(cfg.pick(None, "seed", 7u64).unwrap(), 7);
        assert_eq!(cfg.pick_opt::<String>(None, "out_dir").unwrap().as_deref(), Some("out"));
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("lambda").is_err());
        assert!(cfg.pick::<usize>(None, "lambda", 1).is_err());
    }
}
