//! Signatures (finite similarity types) and variable sets.

use crate::error::{Error, Result};

/// One operation symbol: a name and an arity. Arity 0 symbols are constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered, finite list of operation symbols with unique names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: Vec<(S, usize)>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols
            .into_iter()
            .map(|(name, arity)| Symbol {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, sym) in symbols.iter().enumerate() {
            if !is_identifier(&sym.name) {
                return Err(Error::InvalidSignature(format!(
                    "`{}` is not a valid identifier",
                    sym.name
                )));
            }
            if symbols[..i].iter().any(|s| s.name == sym.name) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate symbol `{}`",
                    sym.name
                )));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn name(&self, sym: usize) -> &str {
        &self.symbols[sym].name
    }

    pub fn arity(&self, sym: usize) -> usize {
        self.symbols[sym].arity
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Indices of the arity-0 symbols, in signature order.
    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.symbols.len()).filter(|&i| self.symbols[i].arity == 0)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }
}

/// An ordered set of variable names, disjoint from a signature's symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: Vec<S>, sig: &Signature) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidVariables(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVariables(format!("duplicate variable `{name}`")));
            }
            if sig.lookup(name).is_some() {
                return Err(Error::InvalidVariables(format!(
                    "variable `{name}` collides with an operation symbol"
                )));
            }
        }
        Ok(VariableSet { names })
    }

    /// The free generators x, y, z for m <= 3, otherwise x0..x{m-1}.
    pub fn generators(m: usize, sig: &Signature) -> Result<Self> {
        let names: Vec<String> = if m <= 3 {
            ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
        } else {
            (0..m).map(|i| format!("x{i}")).collect()
        };
        VariableSet::new(names, sig)
    }

    /// The two designated relation variables x, y.
    pub fn relation_vars(sig: &Signature) -> Result<Self> {
        VariableSet::new(vec!["x", "y"], sig)
    }

    /// The four switching-term variables x, y, u, v.
    pub fn switch_vars(sig: &Signature) -> Result<Self> {
        VariableSet::new(vec!["x", "y", "u", "v"], sig)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
