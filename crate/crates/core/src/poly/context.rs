use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered variable names, with a flag marking parameter variables (such as
/// the homotopy parameter `t`) that are excluded from Jacobians.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    parameter: Vec<bool>,
}

pub type Ctx = Arc<VariableContext>;

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        Self::with_flags(names.iter().map(|n| (n.as_ref().to_string(), false)).collect())
    }

    fn with_flags(entries: Vec<(String, bool)>) -> Result<Ctx> {
        let mut names = Vec::with_capacity(entries.len());
        let mut parameter = Vec::with_capacity(entries.len());
        for (name, flag) in entries {
            if !valid_identifier(&name) {
                return Err(Error::InvalidContext(format!("bad variable name {name:?}")));
            }
            if names.contains(&name) {
                return Err(Error::InvalidContext(format!("duplicate variable {name:?}")));
            }
            names.push(name);
            parameter.push(flag);
        }
        Ok(Arc::new(VariableContext { names, parameter }))
    }

    /// This context followed by one extra parameter variable.
    pub fn with_parameter(&self, name: &str) -> Result<Ctx> {
        let mut entries: Vec<(String, bool)> =
            self.names.iter().cloned().zip(self.parameter.iter().copied()).collect();
        entries.push((name.to_string(), true));
        Self::with_flags(entries)
    }

    /// This context with variable `var` removed.
    pub fn without(&self, var: usize) -> Result<Ctx> {
        let entries = self
            .names
            .iter()
            .cloned()
            .zip(self.parameter.iter().copied())
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, e)| e)
            .collect();
        Self::with_flags(entries)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_parameter(&self, i: usize) -> bool {
        self.parameter[i]
    }

    /// Indices of the non-parameter variables.
    pub fn unknowns(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.parameter[i]).collect()
    }

    pub fn parameters(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parameter[i]).collect()
    }
}

pub(crate) fn same_context(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
