use conesurf::surface::SurfaceDoc;
use conesurf::*;

#[test]
fn builtins_round_trip_through_json() {
    for name in ["square_torus", "octagon_genus2", "mixed_torus", "example_sigma"] {
        let s = builtin(name).unwrap();
        let text = s.to_json();
        let back = parse_surface(&text).unwrap();
        assert_eq!(back.triangles.len(), s.triangles.len(), "{name}");
        assert_eq!(back.classes.len(), s.classes.len(), "{name}");
        assert!(validate_surface(&back).ok, "{name}");
        assert_eq!(SurfaceDoc::from_json(&text).unwrap().to_json(), text);
    }
}

#[test]
fn mismatched_gluing_is_rejected() {
    let s = builtin("square_torus").unwrap();
    let text = s.to_json().replacen("1.0", "1.5", 1);
    assert!(matches!(parse_surface(&text), Err(Error::Geometry(_))));
}

#[test]
fn unknown_builtin_errors() {
    assert!(matches!(builtin("klein_bottle"), Err(Error::UnknownBuiltin(_))));
}
