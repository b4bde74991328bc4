use mmwave_core::catalog::{
    delay_spread_catalog, delay_spread_catalog_json, path_loss_catalog, path_loss_catalog_json,
    DelaySpreadEntry,
};
use mmwave_core::CiModelParams;

const PATH_LOSS_GOLDEN: &str = include_str!("golden/catalog_pathloss.json");
const DELAY_SPREAD_GOLDEN: &str = include_str!("golden/catalog_delay_spread.json");

#[test]
fn path_loss_dump_matches_golden_bytes() {
    assert_eq!(path_loss_catalog_json() + "\n", PATH_LOSS_GOLDEN);
}

#[test]
fn delay_spread_dump_matches_golden_bytes() {
    assert_eq!(delay_spread_catalog_json() + "\n", DELAY_SPREAD_GOLDEN);
}

#[test]
fn golden_parses_back_to_catalog() {
    let parsed: Vec<CiModelParams> = serde_json::from_str(PATH_LOSS_GOLDEN).unwrap();
    assert_eq!(parsed, path_loss_catalog());
    let parsed: Vec<DelaySpreadEntry> = serde_json::from_str(DELAY_SPREAD_GOLDEN).unwrap();
    assert_eq!(parsed, delay_spread_catalog());
}

#[test]
fn every_row_appears_once() {
    let models = path_loss_catalog();
    for m in &models {
        assert_eq!(
            models.iter().filter(|o| o.stratum() == m.stratum()).count(),
            1
        );
    }
    let spreads = delay_spread_catalog();
    for s in &spreads {
        let n = spreads
            .iter()
            .filter(|o| o.band == s.band && o.env == s.env && o.pol == s.pol)
            .count();
        assert_eq!(n, 1);
    }
}
