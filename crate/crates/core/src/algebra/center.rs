use super::element::AlgebraElement;
use crate::measure::{CentralFunction, CentralProjection};
use crate::scalar::rational;

/// The least central projection `z` with `zx = x`: the set of slots where
/// `x` is nonzero.
pub fn central_cover(x: &AlgebraElement) -> CentralProjection {
    let support = x.slots().iter().map(|m| !m.is_zero()).collect();
    CentralProjection::new(x.spec().center_space().clone(), support)
        .expect("one bit per slot")
}

/// The central cover split by block, each on the block's own atom space.
pub fn central_cover_by_block(x: &AlgebraElement) -> Vec<CentralProjection> {
    let spec = x.spec();
    spec.blocks()
        .iter()
        .enumerate()
        .map(|(b, block)| {
            let support = spec.block_slots(b).map(|s| !x.slot(s).is_zero()).collect();
            CentralProjection::new(block.space.clone(), support).expect("one bit per atom")
        })
        .collect()
}

/// Normalized center-valued trace: `(1/n) tr x(slot)`, so that `Φ(1) = 1`.
pub fn center_valued_trace(x: &AlgebraElement) -> CentralFunction {
    let spec = x.spec();
    CentralFunction::from_fn(spec.center_space().clone(), |s| {
        let n = spec.slot(s).degree as i64;
        x.slot(s).trace().scale(&rational(1, n))
    })
}

/// The minimal central projections, one per slot.
pub fn minimal_central_projections(spec: &std::sync::Arc<super::AlgebraSpec>) -> Vec<AlgebraElement> {
    (0..spec.num_slots())
        .map(|s| AlgebraElement::slot_unit(spec.clone(), s))
        .collect()
}
