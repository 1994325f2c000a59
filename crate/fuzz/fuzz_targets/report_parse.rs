#![no_main]

use libfuzzer_sys::fuzz_target;
use semigalois::report::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = Report::from_json_lines(src) {
        let again = Report::from_json_lines(&report.to_json_lines()).expect("own output parses");
        assert_eq!(again, report);
    }
});
