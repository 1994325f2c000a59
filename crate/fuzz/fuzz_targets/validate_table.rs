#![no_main]

use libfuzzer_sys::fuzz_target;
use semigalois::semigroup::InverseSemigroup;

// First byte: order n (mod 9). Next n*n bytes: table entries mod n.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let n = (head % 9) as usize;
    if n == 0 || rest.len() < n * n {
        return;
    }
    let table: Vec<Vec<usize>> = rest[..n * n]
        .chunks(n)
        .map(|row| row.iter().map(|&b| b as usize % n).collect())
        .collect();
    let Ok(s) = InverseSemigroup::from_table(table.clone(), None, None) else {
        return;
    };
    for a in 0..n {
        assert_eq!(s.mul(s.mul(a, s.inv(a)), a), a);
    }
    assert_eq!(s.raw_table(), table);
    let _ = s.is_e_unitary();
    let _ = s.sigma_partition();
});
