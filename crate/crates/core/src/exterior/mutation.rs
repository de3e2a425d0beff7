//! Mutation-testing hook for the identity harness.
//!
//! Flipping the sign of the Schouten–Nijenhuis expansion must make the
//! Koszul-identity checks fail. The flag is thread-local so that a mutated
//! computation never leaks into unrelated work running on other threads.

use std::cell::Cell;

thread_local! {
    static FLIP_SCHOUTEN: Cell<bool> = const { Cell::new(false) };
}

pub(crate) fn schouten_sign_flipped() -> bool {
    FLIP_SCHOUTEN.with(Cell::get)
}

struct Restore(bool);

impl Drop for Restore {
    fn drop(&mut self) {
        FLIP_SCHOUTEN.with(|f| f.set(self.0));
    }
}

/// Runs `f` on the current thread with the sign of the multivector–multivector
/// part of the Schouten–Nijenhuis expansion negated.
pub fn with_flipped_schouten_sign<R>(f: impl FnOnce() -> R) -> R {
    let _restore = Restore(FLIP_SCHOUTEN.with(|c| c.replace(true)));
    f()
}
