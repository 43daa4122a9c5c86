#![no_main]

use libfuzzer_sys::fuzz_target;
use ryser_core::{parse_instances, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(all) = parse_instances(text) {
        let joined: String = all.iter().map(write_instance).collect();
        assert_eq!(parse_instances(&joined).expect("written stream parses"), all);
    }
});
