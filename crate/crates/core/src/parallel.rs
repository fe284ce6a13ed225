//! Range splitting across scoped worker threads.

/// Applies `f` to every index in `0..total` and keeps the `Some` results.
/// The range is cut into `workers` contiguous chunks; results come back in
/// index order regardless of the worker count.
pub(crate) fn collect_range<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    let workers = workers.max(1) as u64;
    if workers == 1 || total < 2 * workers {
        return (0..total).filter_map(&f).collect();
    }
    let chunk = total.div_ceil(workers);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                scope.spawn(move || (start..end).filter_map(f).collect::<Vec<T>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}
