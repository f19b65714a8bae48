use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Domain, OperatorSpec, ParsedSystem};
use crate::error::{Error, Result};

/// TOML problem definition.
///
/// ```toml
/// variables = ["u", "v"]
/// equations = ["u^2 + v^2 - 1", "u - v"]
/// root = [0.7071067811865476, 0.7071067811865476]
/// domain_radius = 0.5
/// ```
///
/// The domain ball is centered at `root` when given, at the origin otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default)]
    pub root: Option<Vec<f64>>,
    #[serde(default)]
    pub domain_radius: Option<f64>,
}

impl ProblemFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::ProblemFile(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ProblemFile(e.to_string()))
    }

    pub fn into_spec(self) -> Result<OperatorSpec> {
        let system = ParsedSystem::new(&self.variables, &self.equations)?;
        let n = system.dimension();
        let mut spec = OperatorSpec::from_system(system, "file");
        if let Some(r) = self.domain_radius {
            if !(r > 0.0) {
                return Err(Error::ProblemFile(format!("domain_radius must be positive, got {r}")));
            }
            let center = self.root.clone().unwrap_or_else(|| vec![0.0; n]);
            spec = spec.with_domain(Domain::ball(center, r))?;
        }
        if let Some(root) = self.root {
            spec = spec.with_known_root(root)?;
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::Operator;

    #[test]
    fn full_file_round_trips() {
        let pf = ProblemFile::from_toml(
            r#"
variables = ["u", "v"]
equations = ["u^2 + v^2 - 2", "u - v"]
root = [1.0, 1.0]
domain_radius = 0.5
"#,
        )
        .unwrap();
        let spec = pf.into_spec().unwrap();
        assert_eq!(spec.known_root(), Some(&[1.0, 1.0][..]));
        assert_eq!(spec.domain().radius, Some(0.5));
        assert_eq!(Operator::<f64>::evaluate(&spec, &[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn optional_fields_may_be_absent() {
        let pf = ProblemFile::from_toml("variables = [\"x\"]\nequations = [\"x - 3\"]").unwrap();
        let spec = pf.into_spec().unwrap();
        assert!(spec.known_root().is_none());
        assert!(spec.domain().radius.is_none());
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(ProblemFile::from_toml("variables = 3"), Err(Error::ProblemFile(_))));
        assert!(matches!(
            ProblemFile::from_toml("variables = [\"x\"]\nequations = [\"x\"]\nextra = 1"),
            Err(Error::ProblemFile(_))
        ));
        let pf = ProblemFile::from_toml("variables = [\"x\"]\nequations = [\"x\", \"x\"]").unwrap();
        assert!(matches!(pf.into_spec(), Err(Error::Arity { .. })));
        let pf = ProblemFile::from_toml("variables = [\"x\"]\nequations = [\"x\"]\nroot = [0.0, 1.0]").unwrap();
        assert!(matches!(pf.into_spec(), Err(Error::Dimension { .. })));
    }
}
