//! Memoized Betti tables and the invariants read from them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use fiberlab_core::invariants::invariants_from_table;
use fiberlab_core::{betti_table, BettiTable, Field, Invariants, MonomialIdeal, Multidegree, Result};

/// Betti table of a possibly zero ideal; the zero ideal has no entries.
#[derive(Debug, Clone)]
pub struct Table(Option<Arc<BettiTable>>);

impl Table {
    pub fn get(&self, i: usize, b: &Multidegree) -> u64 {
        self.0.as_ref().map_or(0, |t| t.get(i, b))
    }

    pub fn entries(&self) -> Vec<(usize, Multidegree, u64)> {
        self.0
            .as_ref()
            .map(|t| t.multigraded().map(|(i, b, d)| (i, b.clone(), d)).collect())
            .unwrap_or_default()
    }

    pub fn coarse(&self) -> BTreeMap<(usize, u32), u64> {
        self.0.as_ref().map(|t| t.coarse()).unwrap_or_default()
    }

    pub fn inner(&self) -> Option<&BettiTable> {
        self.0.as_deref()
    }
}

/// Computes Betti tables over one field, caching by ideal.
pub struct Engine {
    field: Field,
    cache: Mutex<HashMap<MonomialIdeal, Arc<BettiTable>>>,
}

impl Engine {
    pub fn new(field: Field) -> Engine {
        Engine {
            field,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn table(&self, a: &MonomialIdeal) -> Result<Table> {
        if a.is_zero() {
            return Ok(Table(None));
        }
        if let Some(t) = self.cache.lock().expect("cache lock").get(a) {
            return Ok(Table(Some(t.clone())));
        }
        let t = Arc::new(betti_table(a, self.field)?);
        self.cache.lock().expect("cache lock").insert(a.clone(), t.clone());
        Ok(Table(Some(t)))
    }

    pub fn invariants(&self, a: &MonomialIdeal) -> Result<Invariants> {
        let t = self.table(a)?;
        match t.inner() {
            Some(t) => invariants_from_table(a, t),
            None => Err(fiberlab_core::Error::ZeroIdeal),
        }
    }

    pub fn reg(&self, a: &MonomialIdeal) -> Result<i64> {
        Ok(self.invariants(a)?.reg)
    }

    pub fn depth(&self, a: &MonomialIdeal) -> Result<usize> {
        Ok(self.invariants(a)?.depth)
    }

    /// Single generator degree `d` and regularity `d`.
    pub fn linear(&self, a: &MonomialIdeal) -> Result<bool> {
        if !a.is_equigenerated()? {
            return Ok(false);
        }
        Ok(self.reg(a)? == a.t0()? as i64)
    }

    /// The zero and unit ideals count as componentwise linear.
    pub fn componentwise_linear(&self, a: &MonomialIdeal) -> Result<bool> {
        if a.is_zero() || a.is_unit() {
            return Ok(true);
        }
        let inv = self.invariants(a)?;
        for d in inv.indeg..=inv.reg as u32 {
            if !self.linear(&a.component(d)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
