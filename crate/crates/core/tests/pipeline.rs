use sqrun_core::chabauty::{assemble_c_points, run_chabauty};
use sqrun_core::descent::sieve_report;
use sqrun_core::elliptic::hj::{verify_h_j_maps, Sign};
use sqrun_core::exactmath::{int, rat};
use sqrun_core::geometry::known_points;

#[test]
fn chabauty_to_c_points() {
    let maps = verify_h_j_maps().unwrap();
    let mut ts = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let pi = maps.projection(sign).unwrap();
        let r = run_chabauty(sign, &pi, &sieve_report(sign, 120).unwrap()).unwrap();
        assert!(r.certified, "{sign:?}");
        assert!(r.surjectivity.holds);
        assert_eq!(r.final_points.len(), 2);
        ts.extend(r.t_rational);
    }
    assert_eq!(ts, [int(1), rat(1, 2)]);
    let a = assemble_c_points(&ts).unwrap();
    assert_eq!(a.points, known_points());
    assert_eq!(a.tz_points.len(), 8);
}
