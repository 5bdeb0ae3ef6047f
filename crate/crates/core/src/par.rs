//! Data-parallel helpers with a sequential fallback.
//!
//! Sweeps over identity cases, grid points and membership batches are
//! embarrassingly parallel over immutable inputs. With the `parallel`
//! feature (default) they run on rayon; without it the same code runs
//! on a plain iterator, which keeps the crate usable in single-threaded
//! builds and gives the benchmarks a baseline to compare against.

/// Map `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Map `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Configure the global thread pool size. A no-op without `parallel`.
pub fn configure_jobs(jobs: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        // Ignore the error if a pool was already built.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}
