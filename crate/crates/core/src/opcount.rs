//! Floating-point operation tally for the small-matrix kernels.
//!
//! Every kernel in [`crate::smallmat`] reports the additions and
//! multiplications it performs. With the `opcount` feature disabled the
//! tally compiles to nothing and [`measure`] returns `None`.

#[cfg(feature = "opcount")]
use std::cell::Cell;

#[cfg(feature = "opcount")]
thread_local! {
    static FLOPS: Cell<u64> = const { Cell::new(0) };
}

#[inline(always)]
pub(crate) fn add(_n: u64) {
    #[cfg(feature = "opcount")]
    FLOPS.with(|c| c.set(c.get() + _n));
}

/// Runs `f` and returns its result together with the number of kernel
/// flops it executed on the current thread.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, Option<u64>) {
    #[cfg(feature = "opcount")]
    {
        let before = FLOPS.with(Cell::get);
        let r = f();
        let after = FLOPS.with(Cell::get);
        (r, Some(after - before))
    }
    #[cfg(not(feature = "opcount"))]
    {
        (f(), None)
    }
}
