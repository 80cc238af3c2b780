//! CDH challenge instances.
//!
//! The witness (a, b) is retained so the transparent backend can check a
//! claimed solution g^{ab} directly.

use crate::group::{GroupDescription, GroupElement};
use crate::scalar::Scalar;
use crate::tape::RandomTape;

#[derive(Debug, Clone)]
pub struct CdhInstance {
    desc: GroupDescription,
    g_a: GroupElement,
    g_b: GroupElement,
    a: Scalar,
    b: Scalar,
}

impl CdhInstance {
    pub fn generate(desc: &GroupDescription, tape: &mut RandomTape) -> Self {
        let a = tape.sample_scalar(desc);
        let b = tape.sample_scalar(desc);
        CdhInstance::from_witness(desc, a, b)
    }

    pub fn from_witness(desc: &GroupDescription, a: Scalar, b: Scalar) -> Self {
        let g = desc.generator();
        CdhInstance {
            desc: *desc,
            g_a: g.pow(a),
            g_b: g.pow(b),
            a,
            b,
        }
    }

    pub fn desc(&self) -> &GroupDescription {
        &self.desc
    }

    pub fn g_a(&self) -> GroupElement {
        self.g_a
    }

    pub fn g_b(&self) -> GroupElement {
        self.g_b
    }

    /// g^{ab}, computed from the retained witness.
    pub fn solution(&self) -> GroupElement {
        self.desc.generator().pow(self.a * self.b)
    }

    pub fn is_solution(&self, candidate: &GroupElement) -> bool {
        *candidate == self.solution()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_consistent_with_witness() {
        let desc = GroupDescription::new(101).unwrap();
        let inst = CdhInstance::from_witness(&desc, desc.scalar(7), desc.scalar(9));
        assert_eq!(inst.g_a(), desc.element_from_dlog(7));
        assert_eq!(inst.g_b(), desc.element_from_dlog(9));
        assert_eq!(inst.solution(), desc.element_from_dlog(63));
        assert!(inst.is_solution(&desc.element_from_dlog(63)));
        assert!(!inst.is_solution(&desc.element_from_dlog(62)));
    }

    #[test]
    fn generated_instances_check_out() {
        let desc = GroupDescription::default();
        let mut tape = RandomTape::seeded(1);
        for _ in 0..50 {
            let inst = CdhInstance::generate(&desc, &mut tape);
            let (a, b) = (inst.a, inst.b);
            assert_eq!(inst.g_a(), desc.generator().pow(a));
            assert_eq!(inst.g_b(), desc.generator().pow(b));
            assert_eq!(inst.solution(), desc.generator().pow(a * b));
        }
    }

    #[test]
    fn distinct_seeds_give_distinct_instances() {
        let desc = GroupDescription::default();
        let mut hits = 0;
        for k in 0..20u64 {
            let i1 = CdhInstance::generate(&desc, &mut RandomTape::seeded(2 * k));
            let i2 = CdhInstance::generate(&desc, &mut RandomTape::seeded(2 * k + 1));
            if i1.g_a() == i2.g_a() && i1.g_b() == i2.g_b() {
                hits += 1;
            }
        }
        assert_eq!(hits, 0);
    }
}
