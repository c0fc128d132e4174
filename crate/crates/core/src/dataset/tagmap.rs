//! Mapping from simulator source semantics (CARLA-style tags 0..=30) to the
//! nuScenes semantic tag set and category names.

use crate::error::{Error, Result};

/// Rows of the source-to-nuScenes association, indexed by source tag.
/// Category name spellings follow the upstream table verbatim.
const TABLE: [(u8, &str); 31] = [
    (0, "noise"),                  // unlabeled
    (24, "flat.driveable_surface"), // road
    (26, "flat.sidewalk"),         // sidewalk
    (28, "static.mamade"),         // building
    (28, "static.mamade"),         // wall
    (28, "static.mamade"),         // fence
    (28, "static.mamade"),         // pole
    (28, "static.mamade"),         // traffic light
    (28, "static.mamade"),         // traffic sign
    (30, "static.vegetation"),     // vegetation
    (27, "flat.terrain"),          // terrain
    (0, "noise"),                  // sky
    (2, "human.pedestrain.adult"), // pedestrain
    (14, "vehicle.bicycle"),       // rider
    (17, "vehicle.car"),           // car
    (23, "vehicle.truck"),         // truck
    (16, "vehicle.bus.rigid"),     // bus
    (15, "vehicle.bus.rigid"),     // train
    (21, "vehicle.motocycle"),     // motocycle
    (14, "vehicle.bicycle"),       // bicycle
    (29, "static.other"),          // static
    (9, "movable_object.barrier"), // dynamic
    (29, "static.other"),          // other
    (29, "static.other"),          // water
    (24, "flat.driveable_surface"), // road line
    (24, "flat.driveable_surface"), // ground
    (29, "static.other"),          // brigde
    (29, "static.other"),          // rail
    (29, "static.other"),          // guard rail
    (24, "flat.driveable_surface"), // parking lane
    (24, "flat.driveable_surface"), // parking area
];

/// Look up a source tag; returns the nuScenes tag and category name.
pub fn map_semantic_tag(source_tag: u8) -> Result<(u8, &'static str)> {
    TABLE
        .get(source_tag as usize)
        .map(|&(t, n)| (t, n))
        .ok_or(Error::TagOutOfRange(source_tag))
}

/// The 15 distinct nuScenes tags in the image of the mapping, ascending.
pub fn nuscenes_tag_set() -> Vec<u8> {
    let mut tags: Vec<u8> = TABLE.iter().map(|&(t, _)| t).collect();
    tags.sort_unstable();
    tags.dedup();
    tags
}

/// Category name for a nuScenes tag in the image of the mapping.
pub fn nuscenes_category_name(nuscenes_tag: u8) -> Option<&'static str> {
    TABLE.iter().find(|&&(t, _)| t == nuscenes_tag).map(|&(_, n)| n)
}

/// True iff `tag` is one of the 15 nuScenes tags this pipeline can emit.
pub fn is_nuscenes_tag(tag: u8) -> bool {
    TABLE.iter().any(|&(t, _)| t == tag)
}
