#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "splitstep/field.hpp"

namespace splitstep {

// Field dump, version 1. All multi-byte values in host order, which must be
// little-endian for the file to be readable; the marker at offset 12 declares it.
//
//   off  size  content
//     0     8  magic "SSFMFLD\0"
//     8     4  uint32 version (1)
//    12     4  uint32 endianness marker 0x01020304 (bytes 04 03 02 01)
//    16     4  uint32 precision: bytes per real component, 4 or 8
//    20     3  uint8 domain tag per axis x, y, tau (0 real, 1 spectral)
//    23     1  reserved, 0
//    24    24  uint64 nx, ny, nt
//    48    40  float64 dx, dy, dt, dzeta, zeta
//    88     8  uint64 n_steps
//    96     -  payload: nx*ny*nt complex samples, x outer, y middle, tau inner,
//              each as (re, im) at the declared precision
inline constexpr std::size_t kDumpHeaderSize = 96;
inline constexpr std::uint32_t kDumpVersion = 1;
inline constexpr char kDumpMagic[8] = {'S', 'S', 'F', 'M', 'F', 'L', 'D', '\0'};

enum class Precision : std::uint32_t { single = 4, double_ = 8 };

std::string to_string(Precision p);
Precision parse_precision(const std::string& text);

struct FieldDump {
  ComplexField field;
  double zeta = 0.0;
  Precision precision = Precision::double_;
};

std::vector<unsigned char> encode_dump(const ComplexField& field, double zeta, Precision precision);
FieldDump decode_dump(const std::vector<unsigned char>& bytes);

void write_dump(const ComplexField& field, const std::string& path, double zeta = 0.0,
                Precision precision = Precision::double_);
FieldDump read_dump(const std::string& path);

}  // namespace splitstep
