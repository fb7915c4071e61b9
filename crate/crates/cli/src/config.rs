use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use helisms::classifier::FamilyMember;
use helisms::tol::{FD_STEP, RK4_STEP, TOL_ZERO};
use helisms::{Profile, Sign};
use serde::{Deserialize, Serialize};

/// Usage or configuration problem; maps to exit status 3.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(ConfigError(msg.into()))
}

/// A single value `a` or an inclusive range `a:b:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl RangeSpec {
    pub fn single(v: f64) -> Self {
        Self {
            start: v,
            end: v,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        helisms::profile::linspace(self.start, self.end, self.count)
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
        match parts.as_slice() {
            [v] => Ok(Self::single(num(v)?)),
            [a, b, n] => {
                let count = n.trim().parse::<usize>().map_err(|e| format!("bad count {n:?}: {e}"))?;
                if count == 0 {
                    return Err("range count must be positive".into());
                }
                Ok(Self {
                    start: num(a)?,
                    end: num(b)?,
                    count,
                })
            }
            _ => Err(format!("expected `value` or `start:end:count`, got {s:?}")),
        }
    }
}

/// Parses `x,y,z`.
pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad component {p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| format!("expected three components, got {s:?}"))
}

/// Every effective parameter of a run. Written as the report header and
/// accepted back through `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub profile: Option<String>,
    pub pitch: f64,
    pub alpha: f64,
    pub direction: [f64; 3],
    pub s: RangeSpec,
    pub t: RangeSpec,
    pub output: Option<PathBuf>,
    pub mesh: Option<PathBuf>,
    pub fd_step: f64,
    pub tol_zero: f64,
    pub strict: bool,
    pub search: bool,
    pub x0: f64,
    pub z0: f64,
    pub theta0: f64,
    pub step: f64,
    pub n_steps: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: String::new(),
            profile: None,
            pitch: 0.0,
            alpha: 1.0,
            direction: [0.0, 0.0, 1.0],
            s: RangeSpec::single(0.0),
            t: RangeSpec::single(0.0),
            output: None,
            mesh: None,
            fd_step: FD_STEP,
            tol_zero: TOL_ZERO,
            strict: false,
            search: true,
            x0: 1.0,
            z0: 1.0,
            theta0: 0.0,
            step: RK4_STEP,
            n_steps: 2000,
        }
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path, command: &str) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| config_err(format!("bad config {}: {e}", path.display())))?;
        if !cfg.command.is_empty() && cfg.command != command {
            return Err(config_err(format!(
                "config file is for `{}`, not `{command}`",
                cfg.command
            )));
        }
        cfg.command = command.to_string();
        Ok(cfg)
    }

    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn direction(&self) -> anyhow::Result<helisms::UnitVec3> {
        let [x, y, z] = self.direction;
        helisms::UnitVec3::normalize(helisms::Vec3::new(x, y, z)).map_err(|e| config_err(format!("direction: {e}")))
    }

    pub fn profile(&self) -> anyhow::Result<Profile> {
        let desc = self
            .profile
            .as_deref()
            .ok_or_else(|| config_err("a --profile descriptor is required"))?;
        parse_profile(desc)
    }
}

fn parse_fields(body: &str) -> anyhow::Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got {item:?}"))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("duplicate key {k:?}");
        }
    }
    Ok(out)
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> anyhow::Result<T>
    where
        T::Err: fmt::Display,
    {
        match self.0.remove(key) {
            Some(v) => v.parse::<T>().map_err(|e| anyhow!("bad value for {key}: {e}")),
            None => default.ok_or_else(|| anyhow!("missing key {key}")),
        }
    }

    fn finish(self) -> anyhow::Result<()> {
        match self.0.keys().next() {
            Some(k) => bail!("unknown key {k:?}"),
            None => Ok(()),
        }
    }
}

/// Parses `kind:key=val,...`:
///
/// * `cylinder:x0=1,z0=0,sign=+,smin=-1,smax=1`
/// * `line:theta0=0,x0=1,z0=0,smin=-1,smax=1`
/// * `pcc:x0=1,z0=0.5,theta0=0,k=1;0;-1,len=0.5,step=0.001`
pub fn parse_profile(desc: &str) -> anyhow::Result<Profile> {
    let inner = || -> anyhow::Result<Profile> {
        let (kind, body) = desc.split_once(':').unwrap_or((desc, ""));
        let mut f = Fields(parse_fields(body)?);
        let profile = match kind.trim() {
            "cylinder" => {
                let x0 = f.take("x0", None)?;
                let z0 = f.take("z0", Some(0.0))?;
                let sign: Sign = f.take("sign", Some(Sign::Plus))?;
                let domain = (f.take("smin", Some(-1.0))?, f.take("smax", Some(1.0))?);
                f.finish()?;
                Profile::cylinder(x0, z0, sign, domain)?
            }
            "line" => {
                let theta0 = f.take("theta0", Some(0.0))?;
                let x0 = f.take("x0", None)?;
                let z0 = f.take("z0", Some(0.0))?;
                let domain = (f.take("smin", Some(-1.0))?, f.take("smax", Some(1.0))?);
                f.finish()?;
                Profile::line(theta0, x0, z0, domain)?
            }
            "pcc" => {
                let ks: String = f.take("k", None)?;
                let curvatures = ks
                    .split(';')
                    .map(|k| k.trim().parse::<f64>().map_err(|e| anyhow!("bad curvature {k:?}: {e}")))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let member = FamilyMember {
                    x0: f.take("x0", None)?,
                    z0: f.take("z0", Some(0.0))?,
                    theta0: f.take("theta0", Some(0.0))?,
                    curvatures,
                };
                let len = f.take("len", None)?;
                let step = f.take("step", Some(RK4_STEP))?;
                f.finish()?;
                member.build(len, step)?
            }
            other => bail!("unknown profile kind {other:?} (expected cylinder, line or pcc)"),
        };
        Ok(profile)
    };
    inner()
        .with_context(|| format!("profile descriptor {desc:?}"))
        .map_err(|e| config_err(format!("{e:#}")))
}

#[cfg(test)]
mod tests {
    use helisms::profile::ProfileKind;

    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("0.5".parse::<RangeSpec>().unwrap(), RangeSpec::single(0.5));
        let r: RangeSpec = "0:1:3".parse().unwrap();
        assert_eq!(r.values(), vec![0.0, 0.5, 1.0]);
        assert!("0:1".parse::<RangeSpec>().is_err());
        assert!("0:1:0".parse::<RangeSpec>().is_err());
    }

    #[test]
    fn descriptors() {
        let p = parse_profile("cylinder:x0=1,z0=0,sign=+").unwrap();
        assert!(matches!(p.kind(), ProfileKind::Cylinder { .. }));
        assert_eq!(p.domain(), (-1.0, 1.0));
        let p = parse_profile("line:theta0=0.3,x0=2,smin=0,smax=2").unwrap();
        assert_eq!(p.domain(), (0.0, 2.0));
        let p = parse_profile("pcc:x0=1,z0=0.5,theta0=0,k=1;0;-1,len=0.5").unwrap();
        assert!(matches!(p.kind(), ProfileKind::Integrated(_)));
        assert!((p.domain().1 - 1.5).abs() < 1e-12);
    }

    #[test]
    fn display_round_trips() {
        let p = parse_profile("cylinder:x0=1.5,z0=0.25,sign=-,smin=0,smax=2").unwrap();
        let q = parse_profile(&p.to_string()).unwrap();
        assert_eq!(p.to_string(), q.to_string());
    }

    #[test]
    fn bad_descriptors() {
        for d in [
            "sphere:r=1",
            "cylinder:z0=1",
            "cylinder:x0=1,x0=2",
            "line:x0=1,foo=2",
            "cylinder:x0=abc",
        ] {
            let e = parse_profile(d).unwrap_err();
            assert!(e.downcast_ref::<ConfigError>().is_some(), "{d}");
        }
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = RunConfig {
            command: "mesh".into(),
            profile: Some("cylinder:x0=1".into()),
            ..RunConfig::default()
        };
        let back: RunConfig = serde_json::from_str(&cfg.echo()).unwrap();
        assert_eq!(back, cfg);
        assert!(serde_json::from_str::<RunConfig>(r#"{"pich": 1}"#).is_err());
    }
}
