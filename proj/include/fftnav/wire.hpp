#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fftnav/perception.hpp"

namespace fftnav::wire {

// Message layout, little-endian:
//   u8  magic (0xA5)
//   u8  version
//   u16 sender id
//   u16 sender heading, 2*pi/65536 rad per tick
//   u8  extremum count
//   count x { u16 angle ticks, u16 distance (1/65535 per unit) }
//   ceil(count/8) bytes kind bitmap, bit j (LSB first) set = maximum
inline constexpr std::uint8_t kMagic = 0xA5;
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 7;
inline constexpr std::size_t kMaxExtrema = 255;

inline constexpr double kAngleQuantum = 6.283185307179586 / 65536.0;
inline constexpr double kDistanceQuantum = 1.0 / 65535.0;

constexpr std::size_t encoded_size(std::size_t count) { return kHeaderSize + 4 * count + (count + 7) / 8; }

std::uint16_t angle_to_ticks(double angle);
double ticks_to_angle(std::uint16_t ticks);
std::uint16_t distance_to_fixed(double d);
double fixed_to_distance(std::uint16_t v);

std::vector<std::uint8_t> encode(const CompressedObservation& obs);
CompressedObservation decode(std::span<const std::uint8_t> bytes);

}  // namespace fftnav::wire
