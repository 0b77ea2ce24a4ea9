//! Instrumentation hooks.
//!
//! Algorithms report intermediate results to an [`Observer`] so that tests and
//! the acceptance suite can check invariants on every front the algorithms
//! actually compute. The unit type `()` is the no-op observer.

use crate::nsga2::Crowding;
use crate::problems::ObjectiveVector;

pub trait Observer {
    /// Whether the hooks do anything. Algorithms may skip assembling hook
    /// arguments when this is `false`.
    fn enabled(&self) -> bool {
        true
    }

    /// Called after crowding distances are computed for `front`, whose
    /// entries line up with `crowding.total`.
    fn on_crowding(&mut self, front: &[ObjectiveVector], crowding: &Crowding) {
        let _ = (front, crowding);
    }

    /// Called on every SMS-EMOA removal with the last non-dominated front.
    /// `deltas` holds the hypervolume contributions when the removal rule
    /// computed them.
    fn on_sms_removal(&mut self, last_front: &[ObjectiveVector], deltas: Option<&[u64]>) {
        let _ = (last_front, deltas);
    }

    /// Same as [`Observer::on_sms_removal`] for a front given as runs:
    /// `vectors[t]` is shared by `counts[t]` members, each contributing
    /// `deltas[t]`. The default expands the runs.
    fn on_sms_removal_runs(&mut self, vectors: &[ObjectiveVector], counts: &[usize], deltas: Option<&[u64]>) {
        let expand = |t: usize, c: usize| std::iter::repeat_n(t, c);
        let index: Vec<usize> = counts.iter().enumerate().flat_map(|(t, &c)| expand(t, c)).collect();
        let front: Vec<ObjectiveVector> = index.iter().map(|&t| vectors[t]).collect();
        let member_deltas: Option<Vec<u64>> = deltas.map(|d| index.iter().map(|&t| d[t]).collect());
        self.on_sms_removal(&front, member_deltas.as_deref());
    }
}

impl Observer for () {
    fn enabled(&self) -> bool {
        false
    }
}

impl<O: Observer + ?Sized> Observer for &mut O {
    fn enabled(&self) -> bool {
        (**self).enabled()
    }

    fn on_crowding(&mut self, front: &[ObjectiveVector], crowding: &Crowding) {
        (**self).on_crowding(front, crowding);
    }

    fn on_sms_removal(&mut self, last_front: &[ObjectiveVector], deltas: Option<&[u64]>) {
        (**self).on_sms_removal(last_front, deltas);
    }

    fn on_sms_removal_runs(&mut self, vectors: &[ObjectiveVector], counts: &[usize], deltas: Option<&[u64]>) {
        (**self).on_sms_removal_runs(vectors, counts, deltas);
    }
}
