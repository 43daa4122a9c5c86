#![no_main]

use libfuzzer_sys::fuzz_target;
use ryser_core::CoverCertificate;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<CoverCertificate>(data) {
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CoverCertificate>(&text).unwrap(), c);
    }
});
