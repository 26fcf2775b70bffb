//! Parallel/sequential dispatch.
//!
//! Hot loops (character products, Adams recursions, batched Bott runs) go
//! through [`Exec`]. With the `parallel` feature the default is a rayon
//! fold/reduce; without it every call runs sequentially. All merges are
//! commutative integer sums, so results do not depend on the schedule.

/// Execution strategy for data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The strategy actually available in this build.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }
}

/// Map every item and fold the results with `merge`, starting from `init()`.
pub fn map_reduce<T, A, I, F, M>(exec: Exec, items: &[T], init: I, f: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &T) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items
                .par_iter()
                .fold(&init, |mut acc, t| {
                    f(&mut acc, t);
                    acc
                })
                .reduce(&init, &merge)
        }
        _ => {
            let mut acc = init();
            for t in items {
                f(&mut acc, t);
            }
            acc
        }
    }
}

/// Order-preserving map.
pub fn map_collect<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
