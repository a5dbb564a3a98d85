use std::fs;
use std::sync::Arc;

use mayss_cli::cache::{Cache, CacheKey, SCHEMA_VERSION};
use mayss_core::adams_certify::certify_ext_dim;
use mayss_core::{E2Report, MayEngine, PrimeContext};

fn report() -> E2Report {
    MayEngine::new(PrimeContext::new(7).unwrap()).e2(2, 600)
}

#[test]
fn put_then_get() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cache::open(dir.path()).unwrap();
    let key = CacheKey::new(7, "e2", 2, 600);
    assert!(c.get::<E2Report>(&key).is_none());
    let r = report();
    c.put(&key, &r).unwrap();
    assert_eq!(c.get::<E2Report>(&key), Some(r));
    let e = MayEngine::new(PrimeContext::new(7).unwrap());
    let cert = certify_ext_dim(&e, 4, (2401 + 49) * 12);
    let k2 = CacheKey::new(7, "dim", 4, (2401 + 49) * 12);
    c.put(&k2, &cert).unwrap();
    assert_eq!(c.get(&k2), Some(cert));
    assert_ne!(c.path_for(&key), c.path_for(&k2));
}

#[test]
fn version_bump_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cache::open(dir.path()).unwrap();
    let key = CacheKey::new(7, "e2", 2, 600);
    c.put(&key, &report()).unwrap();
    let bumped = CacheKey {
        schema_version: SCHEMA_VERSION + 1,
        ..key.clone()
    };
    assert!(c.get::<E2Report>(&bumped).is_none());
    // an old record copied to the new address is still rejected
    fs::copy(c.path_for(&key), c.path_for(&bumped)).unwrap();
    assert!(c.get::<E2Report>(&bumped).is_none());
}

#[test]
fn corruption_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cache::open(dir.path()).unwrap();
    let key = CacheKey::new(5, "e2", 1, 200);
    let r = MayEngine::new(PrimeContext::new(5).unwrap()).e2(1, 200);
    c.put(&key, &r).unwrap();
    let path = c.path_for(&key);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace("\"e2_total\":1", "\"e2_total\":2")).unwrap();
    assert!(c.get::<E2Report>(&key).is_none());
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert!(c.get::<E2Report>(&key).is_none());
    // a fresh put repairs it
    c.put(&key, &r).unwrap();
    assert_eq!(c.get::<E2Report>(&key), Some(r));
}

#[test]
fn concurrent_double_put() {
    let dir = tempfile::tempdir().unwrap();
    let c = Arc::new(Cache::open(dir.path()).unwrap());
    let key = CacheKey::new(7, "e2", 2, 600);
    let r = Arc::new(report());
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let (c, key, r) = (c.clone(), key.clone(), r.clone());
            std::thread::spawn(move || c.put(&key, &*r))
        })
        .collect();
    for h in handles {
        h.join().unwrap().unwrap();
    }
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    assert_eq!(c.get::<E2Report>(&key).as_ref(), Some(&*r));
}
