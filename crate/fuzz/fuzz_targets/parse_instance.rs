#![no_main]

use libfuzzer_sys::fuzz_target;
use ryser_core::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = parse_instance(text) {
        let written = write_instance(&h);
        let back = parse_instance(&written).expect("written instance parses");
        assert_eq!(back, h);
        assert_eq!(write_instance(&back), written);
    }
});
