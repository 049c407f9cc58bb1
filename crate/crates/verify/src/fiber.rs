//! Fiber products `F = I + J + mn` and the filtration of their powers.

use std::sync::Arc;

use fiberlab_core::{fiber_product, Error, MonomialIdeal, Result, Ring};

/// Two ideals in disjoint variable sets together with their fiber product.
#[derive(Debug, Clone)]
pub struct FiberSetup {
    pub tensor: Arc<Ring>,
    /// `I` over its own ring.
    pub i: MonomialIdeal,
    /// `J` over its own ring.
    pub j: MonomialIdeal,
    /// `I` and `J` embedded in the tensor ring.
    pub it: MonomialIdeal,
    pub jt: MonomialIdeal,
    /// Maximal ideals of the two blocks, in the tensor ring.
    pub m: MonomialIdeal,
    pub n: MonomialIdeal,
    pub f: MonomialIdeal,
    /// `I + mn`.
    pub h: MonomialIdeal,
}

impl FiberSetup {
    /// Builds the tensor ring `T` of the two factor rings.
    pub fn new(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<FiberSetup> {
        let t = Ring::tensor("T", i.ring(), j.ring())?.with_field(i.ring().field());
        FiberSetup::in_ring(i, j, &Arc::new(t))
    }

    /// Uses an existing tensor ring that has the factor rings as blocks.
    pub fn in_ring(i: &MonomialIdeal, j: &MonomialIdeal, tensor: &Arc<Ring>) -> Result<FiberSetup> {
        let f = fiber_product(i, j, tensor)?;
        let block_max = |r: &Ring| -> Result<MonomialIdeal> {
            let vars: Vec<usize> = tensor.block_of(r)?.range().collect();
            Ok(MonomialIdeal::variables(tensor, &vars))
        };
        let m = block_max(i.ring())?;
        let n = block_max(j.ring())?;
        let it = i.embed(tensor)?;
        let jt = j.embed(tensor)?;
        let h = it.sum(&m.product(&n)?)?;
        Ok(FiberSetup {
            tensor: tensor.clone(),
            i: i.clone(),
            j: j.clone(),
            it,
            jt,
            m,
            n,
            f,
            h,
        })
    }

    pub fn mn(&self) -> Result<MonomialIdeal> {
        self.m.product(&self.n)
    }

    /// The same pair with the factors exchanged.
    pub fn swapped(&self) -> Result<FiberSetup> {
        FiberSetup::new(&self.j, &self.i)
    }
}

/// One step `G_t = G_{t-1} + (mn)^{s-t} J^t`.
#[derive(Debug, Clone)]
pub struct FiltrationStep {
    pub t: u32,
    pub previous: MonomialIdeal,
    pub added: MonomialIdeal,
    pub g: MonomialIdeal,
    /// `G_{t-1} ∩ (mn)^{s-t} J^t = m^{s-t+1} n^{s-t} J^t`.
    pub intersection_holds: bool,
}

#[derive(Debug, Clone)]
pub struct Filtration {
    pub s: u32,
    pub g0: MonomialIdeal,
    pub steps: Vec<FiltrationStep>,
    /// `G_s = F^s`.
    pub reaches_power: bool,
}

impl Filtration {
    pub fn holds(&self) -> bool {
        self.reaches_power && self.steps.iter().all(|st| st.intersection_holds)
    }

    pub fn last(&self) -> &MonomialIdeal {
        self.steps.last().map_or(&self.g0, |st| &st.g)
    }
}

pub fn filtration(setup: &FiberSetup, s: u32) -> Result<Filtration> {
    if s == 0 {
        return Err(Error::InvalidArgument("filtration needs s >= 1".into()));
    }
    let mn = setup.mn()?;
    let g0 = setup.h.power(s);
    let mut prev = g0.clone();
    let mut steps = Vec::with_capacity(s as usize);
    for t in 1..=s {
        let jt = setup.jt.power(t);
        let added = mn.power(s - t).product(&jt)?;
        let expected = setup.m.power(s - t + 1).product(&setup.n.power(s - t))?.product(&jt)?;
        let intersection_holds = prev.intersect(&added)? == expected;
        let g = prev.sum(&added)?;
        steps.push(FiltrationStep {
            t,
            previous: prev,
            added,
            g: g.clone(),
            intersection_holds,
        });
        prev = g;
    }
    let reaches_power = prev == setup.f.power(s);
    Ok(Filtration {
        s,
        g0,
        steps,
        reaches_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(name: &str, var: &str, e: u32) -> MonomialIdeal {
        let r = Arc::new(Ring::new(name, [var]).unwrap());
        MonomialIdeal::from_exponents(&r, &[&[e]]).unwrap()
    }

    #[test]
    fn squares() {
        let setup = FiberSetup::new(&one_var("R", "x", 2), &one_var("S", "y", 2)).unwrap();
        assert_eq!(setup.f.format_gens(), "x^2, x*y, y^2");
        let fl = filtration(&setup, 2).unwrap();
        assert!(fl.holds());
        assert_eq!(fl.last(), &MonomialIdeal::maximal(&setup.tensor).power(4));
        // s = 1: H ∩ J = mJ.
        assert!(filtration(&setup, 1).unwrap().holds());
    }

    #[test]
    fn zero_factors() {
        let r = Arc::new(Ring::new("R", ["x"]).unwrap());
        let s = Arc::new(Ring::new("S", ["y"]).unwrap());
        let setup = FiberSetup::new(&MonomialIdeal::zero(&r), &MonomialIdeal::zero(&s)).unwrap();
        assert_eq!(setup.f, setup.mn().unwrap());
        assert!(filtration(&setup, 3).unwrap().holds());
    }

    #[test]
    fn rejects_linear_generators() {
        assert!(matches!(
            FiberSetup::new(&one_var("R", "x", 1), &one_var("S", "y", 2)),
            Err(Error::NotContained(_))
        ));
    }
}
