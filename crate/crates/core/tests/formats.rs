use vprim::fixtures;
use vprim::spectrum;
use vprim::sync::{self, Transformation};
use vprim::{Digraph, PermGroup};

#[test]
fn bundled_group_files_round_trip() {
    for text in [
        include_str!("../data/psl2_5.grp"),
        include_str!("../data/psl2_7.grp"),
    ] {
        let g = PermGroup::parse_grp(text).unwrap();
        let again = PermGroup::parse_grp(&g.to_grp()).unwrap();
        assert_eq!(g.generators(), again.generators());
        assert!(g.is_primitive());
    }
    assert_eq!(fixtures::psl2_7().order_u64(), Some(168));
}

#[test]
fn dg_text_feeds_the_spectrum() {
    let text = Digraph::kneser(6, 2, true).unwrap().to_dg();
    let g: Digraph = text.parse().unwrap();
    let r = spectrum::classify(&g).unwrap();
    assert_eq!((r.n, r.d, r.kappa), (15, 7, Some(4)));
    assert_eq!(r.to_string().lines().next(), Some("n: 15"));
}

#[test]
fn comments_and_blank_lines_are_ignored_everywhere() {
    let g = PermGroup::parse_grp("# cyclic\n\nn 4\n# shift\n1 2 3 0\n\n").unwrap();
    let f = Transformation::parse("\n# fold\nn 4\n\n0 1 0 1\n").unwrap();
    assert!(!sync::synchronises(&g, &f).unwrap().synchronises);
    let collapse = sync::non_collapsible_graph(&g, &f).unwrap();
    let reparsed: Digraph = format!("# graph\n{}", collapse.to_dg()).parse().unwrap();
    assert_eq!(reparsed, collapse);
}
