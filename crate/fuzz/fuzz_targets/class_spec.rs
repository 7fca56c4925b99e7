#![no_main]
use libfuzzer_sys::fuzz_target;
use nahilb_cli::parse_class_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for dims in [&[3][..], &[1, 2], &[1, 1, 1]] {
        let _ = parse_class_spec(text, 2, dims);
    }
});
