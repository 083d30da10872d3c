use std::thread;

use stacky_core::census::{CensusConfig, CensusCounts, CensusEngine};
use stacky_core::{Error, Result};

/// Runs a census over `shards` worker threads and adds the partial counts.
pub fn sharded_census(cfg: &CensusConfig, shards: usize) -> Result<CensusCounts> {
    if shards == 0 {
        return Err(Error::InvalidArgument("need at least one shard".into()));
    }
    let engine = CensusEngine::prepare(cfg)?;
    if shards == 1 {
        return engine.count();
    }
    let parts: Vec<Result<CensusCounts>> = thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|i| {
                let engine = &engine;
                s.spawn(move || engine.count_shard(i, shards))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut total: Option<CensusCounts> = None;
    for part in parts {
        let part = part?;
        total = Some(match total {
            Some(t) => t.merge(part),
            None => part,
        });
    }
    Ok(total.expect("at least one shard"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use stacky_core::census::Mode;

    #[test]
    fn shard_counts_agree() {
        for mode in [Mode::Oracle, Mode::Stratified] {
            let cfg = CensusConfig::new(20_000, mode);
            let one = sharded_census(&cfg, 1).unwrap();
            for n in [2, 5, 8] {
                assert_eq!(sharded_census(&cfg, n).unwrap(), one);
            }
        }
        assert!(sharded_census(&CensusConfig::new(10, Mode::Oracle), 0).is_err());
    }
}
