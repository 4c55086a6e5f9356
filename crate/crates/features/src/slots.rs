//! Time-slot scheme shared by the count-style feature families.
//!
//! Each day type (weekday, weekend) carries 28 slots: 24 one-hour slots,
//! 3 eight-hour slots (00–08, 08–16, 16–24), and the whole day. The three
//! slot kinds each partition the day, so an event lands in exactly one
//! slot of each kind and per-kind totals agree exactly.

pub const HOURLY_SLOTS: usize = 24;
pub const EIGHT_HOUR_SLOTS: usize = 3;
/// Slots per day type: 24 hourly + 3 eight-hour + whole-day.
pub const SLOTS_PER_DAY_TYPE: usize = HOURLY_SLOTS + EIGHT_HOUR_SLOTS + 1;
/// Index of the whole-day slot within a day-type block.
pub const WHOLE_DAY_SLOT: usize = SLOTS_PER_DAY_TYPE - 1;

/// The three slot indices (hourly, eight-hour, whole-day) within a
/// day-type block for an event in the given hour of day.
pub fn slot_offsets(hour: u32) -> (usize, usize, usize) {
    assert!(hour < 24, "hour {hour} out of range");
    let hourly = hour as usize;
    let eight = HOURLY_SLOTS + (hour / 8) as usize;
    (hourly, eight, WHOLE_DAY_SLOT)
}

/// Human-readable slot name: `00-01h` … `23-24h`, `00-08h`, `08-16h`,
/// `16-24h`, `day`.
pub fn slot_label(slot: usize) -> String {
    assert!(slot < SLOTS_PER_DAY_TYPE, "slot {slot} out of range");
    if slot < HOURLY_SLOTS {
        format!("{:02}-{:02}h", slot, slot + 1)
    } else if slot < HOURLY_SLOTS + EIGHT_HOUR_SLOTS {
        let start = (slot - HOURLY_SLOTS) * 8;
        format!("{:02}-{:02}h", start, start + 8)
    } else {
        "day".to_string()
    }
}
