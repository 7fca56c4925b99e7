#![no_main]
use libfuzzer_sys::fuzz_target;
use nahilb_cli::JobSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(job) = serde_json::from_slice::<JobSpec>(data) {
        let text = serde_json::to_string(&job).expect("decoded jobs serialize");
        let again: JobSpec = serde_json::from_str(&text).expect("round trip");
        assert_eq!(again, job);
    }
});
