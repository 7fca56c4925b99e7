#![no_main]
use libfuzzer_sys::fuzz_target;
use nahilb_algebra::{FactoredRational, LinearForm, Poly};
use serde::{de::DeserializeOwned, Serialize};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(data: &[u8]) {
    if let Ok(value) = serde_json::from_slice::<T>(data) {
        let text = serde_json::to_string(&value).expect("decoded values serialize");
        let again: T = serde_json::from_str(&text).expect("round trip");
        assert_eq!(again, value);
    }
}

fuzz_target!(|data: &[u8]| {
    round_trip::<FactoredRational>(data);
    round_trip::<Poly>(data);
    round_trip::<LinearForm>(data);
});
