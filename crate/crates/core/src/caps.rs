//! Resource caps. Breaching a cap is always a hard error, never a silent
//! truncation.

use std::sync::RwLock;

use crate::error::{Error, Result};

static GLOBAL: RwLock<Option<Caps>> = RwLock::new(None);

/// Environment variable holding cap overrides, e.g.
/// `FIBERLAB_CAPS="lattice=5000000,basis=400000"`.
pub const CAPS_ENV: &str = "FIBERLAB_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of lcm-lattice points.
    pub lattice: usize,
    /// Maximum Koszul chain-space dimension per homological degree and
    /// internal degree.
    pub basis: usize,
    /// Maximum total degree for degree-indexed enumerations.
    pub degree: u32,
    /// Maximum support size of a multidegree handed to the simplicial engine.
    pub support: usize,
    /// Maximum number of candidate generators formed by a single ideal
    /// product before minimalization.
    pub products: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lattice: 2_000_000,
            basis: 200_000,
            degree: 64,
            support: 22,
            products: 20_000_000,
        }
    }
}

impl Caps {
    /// Defaults overridden by `FIBERLAB_CAPS` when set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(overrides) => Caps::default().with_overrides(&overrides),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Process-wide caps used by operations without an explicit `Caps`
    /// argument: the last value passed to [`Caps::set_global`], else the
    /// environment, else the defaults.
    pub fn global() -> Caps {
        if let Some(c) = *GLOBAL.read().unwrap_or_else(|e| e.into_inner()) {
            return c;
        }
        Caps::from_env().unwrap_or_default()
    }

    pub fn set_global(caps: Caps) {
        *GLOBAL.write().unwrap_or_else(|e| e.into_inner()) = Some(caps);
    }

    /// Applies `key=value` pairs separated by commas.
    pub fn with_overrides(mut self, overrides: &str) -> Result<Caps> {
        for item in overrides.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("malformed cap `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("malformed cap value `{item}`")))?;
            match key.trim() {
                "lattice" => self.lattice = value as usize,
                "basis" => self.basis = value as usize,
                "degree" => self.degree = value as u32,
                "support" => self.support = value as usize,
                "products" => self.products = value as usize,
                other => return Err(Error::InvalidArgument(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
        if value > limit {
            return Err(Error::CapExceeded {
                what,
                value: value as u64,
                limit: limit as u64,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let c = Caps::default().with_overrides("lattice=10, degree = 7").unwrap();
        assert_eq!(c.lattice, 10);
        assert_eq!(c.degree, 7);
        assert_eq!(c.basis, Caps::default().basis);
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("lattice").is_err());
    }
}
