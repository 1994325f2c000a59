#![no_main]

use libfuzzer_sys::fuzz_target;
use semigalois::instance::{parse_instance, render_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(inst) = parse_instance(src) else {
        return;
    };
    // anything accepted must survive a render/parse round trip
    let text = render_instance(&inst.action);
    let back = parse_instance(&text).expect("rendered instance parses");
    assert_eq!(back.action.isos(), inst.action.isos());
    assert_eq!(back.action.semigroup().raw_table(), inst.action.semigroup().raw_table());
});
