use std::collections::HashMap;
use std::sync::Arc;

use mayss_core::adams_certify::{certify_ext_dim, certify_ext_vanishing, Certificate};
use mayss_core::{ContextError, E2Report, MayEngine, PrimeContext};
use parking_lot::Mutex;

use crate::cache::{Cache, CacheKey};

/// Engines by prime plus an optional disk cache in front of the cell queries.
#[derive(Debug, Default)]
pub struct Session {
    engines: Mutex<HashMap<u64, Arc<MayEngine>>>,
    cache: Option<Cache>,
}

impl Session {
    pub fn new(cache: Option<Cache>) -> Self {
        Session {
            engines: Mutex::new(HashMap::new()),
            cache,
        }
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    pub fn engine(&self, p: u64) -> Result<Arc<MayEngine>, ContextError> {
        let ctx = PrimeContext::new(p)?;
        Ok(self
            .engines
            .lock()
            .entry(p)
            .or_insert_with(|| Arc::new(MayEngine::new(ctx)))
            .clone())
    }

    fn cached<T, F>(&self, p: u64, module: &str, s: i64, t: i64, f: F) -> T
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
        F: FnOnce() -> T,
    {
        match &self.cache {
            Some(c) => c.get_or_insert_with(&CacheKey::new(p, module, s, t), f),
            None => f(),
        }
    }

    pub fn e2(&self, p: u64, s: u32, t: u64) -> Result<E2Report, ContextError> {
        let e = self.engine(p)?;
        Ok(self.cached(p, "e2", s as i64, t as i64, || e.e2(s, t)))
    }

    pub fn vanishing(&self, p: u64, s: i64, t: i64) -> Result<Certificate, ContextError> {
        let e = self.engine(p)?;
        Ok(self.cached(p, "vanish", s, t, || certify_ext_vanishing(&e, s, t)))
    }

    pub fn dim(&self, p: u64, s: i64, t: i64) -> Result<Certificate, ContextError> {
        let e = self.engine(p)?;
        Ok(self.cached(p, "dim", s, t, || certify_ext_dim(&e, s, t)))
    }
}
