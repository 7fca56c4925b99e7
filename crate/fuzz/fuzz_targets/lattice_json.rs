#![no_main]
use libfuzzer_sys::fuzz_target;
use nahilb_lattice::{Enumeration, NestedPartition};

fuzz_target!(|data: &[u8]| {
    if let Ok(chain) = serde_json::from_slice::<NestedPartition>(data) {
        let again: NestedPartition = serde_json::from_str(&serde_json::to_string(&chain).unwrap()).unwrap();
        assert_eq!(again, chain);
    }
    if let Ok(e) = serde_json::from_slice::<Enumeration>(data) {
        let again: Enumeration = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(again.order(), e.order());
        assert_eq!(again.levels(), e.levels());
    }
});
