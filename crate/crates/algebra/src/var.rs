use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;

/// The three disjoint families of indeterminates.
///
/// Declaration order fixes the namespace part of the total variable order:
/// every `s` variable precedes every `theta` variable, which precede every `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    S,
    Theta,
    Z,
}

impl Namespace {
    pub const ALL: [Namespace; 3] = [Namespace::S, Namespace::Theta, Namespace::Z];

    pub fn prefix(self) -> &'static str {
        match self {
            Namespace::S => "s",
            Namespace::Theta => "theta",
            Namespace::Z => "z",
        }
    }
}

/// A named indeterminate such as `s3`, `theta1` or `z2`. Indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId {
    pub ns: Namespace,
    pub index: u32,
}

impl VariableId {
    pub fn new(ns: Namespace, index: u32) -> Result<Self, AlgebraError> {
        if index == 0 {
            return Err(AlgebraError::Parse(format!(
                "variable index must be positive, got {}0",
                ns.prefix()
            )));
        }
        Ok(VariableId { ns, index })
    }

    /// Torus parameter `s_i`. Panics on index 0.
    pub fn s(index: u32) -> Self {
        assert!(index >= 1, "s-variable index must be positive");
        VariableId { ns: Namespace::S, index }
    }

    pub fn theta(index: u32) -> Self {
        assert!(index >= 1, "theta-variable index must be positive");
        VariableId { ns: Namespace::Theta, index }
    }

    pub fn z(index: u32) -> Self {
        assert!(index >= 1, "z-variable index must be positive");
        VariableId { ns: Namespace::Z, index }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ns.prefix(), self.index)
    }
}

impl FromStr for VariableId {
    type Err = AlgebraError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        for ns in Namespace::ALL {
            if let Some(rest) = text.strip_prefix(ns.prefix()) {
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    break;
                }
                let index: u32 = rest
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad variable index in {text:?}")))?;
                return VariableId::new(ns, index);
            }
        }
        Err(AlgebraError::Parse(format!("unknown variable {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_namespace_then_index() {
        let mut vars = [
            VariableId::z(1),
            VariableId::theta(2),
            VariableId::s(10),
            VariableId::s(2),
            VariableId::z(3),
        ];
        vars.sort();
        let shown: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["s2", "s10", "theta2", "z1", "z3"]);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["s1", "theta12", "z4"] {
            let v: VariableId = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
        }
        assert!("s0".parse::<VariableId>().is_err());
        assert!("t1".parse::<VariableId>().is_err());
        assert!("s".parse::<VariableId>().is_err());
        assert!("s1x".parse::<VariableId>().is_err());
    }
}
