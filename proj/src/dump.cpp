#include "splitstep/dump.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

constexpr std::uint32_t kEndianMarker = 0x01020304u;

template <typename T>
void put(std::vector<unsigned char>& out, std::size_t offset, T value) {
  std::memcpy(out.data() + offset, &value, sizeof(T));
}

template <typename T>
T get(const std::vector<unsigned char>& in, std::size_t offset) {
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  return value;
}

Error dump_error(const std::string& what) { return Error(ErrorKind::io, "field dump: " + what); }

}  // namespace

std::string to_string(Precision p) { return p == Precision::single ? "single" : "double"; }

Precision parse_precision(const std::string& text) {
  if (text == "single") return Precision::single;
  if (text == "double") return Precision::double_;
  throw Error(ErrorKind::invalid_argument, "unknown precision '" + text + "' (single, double)");
}

std::vector<unsigned char> encode_dump(const ComplexField& field, double zeta, Precision precision) {
  const Grid& g = field.grid();
  const std::size_t bytes = static_cast<std::size_t>(precision);
  std::vector<unsigned char> out(kDumpHeaderSize + 2 * bytes * g.size(), 0);
  std::memcpy(out.data(), kDumpMagic, sizeof kDumpMagic);
  put<std::uint32_t>(out, 8, kDumpVersion);
  put<std::uint32_t>(out, 12, kEndianMarker);
  put<std::uint32_t>(out, 16, static_cast<std::uint32_t>(precision));
  for (int a = 0; a < 3; ++a) out[20 + a] = static_cast<unsigned char>(field.domains()[a]);
  put<std::uint64_t>(out, 24, g.nx());
  put<std::uint64_t>(out, 32, g.ny());
  put<std::uint64_t>(out, 40, g.nt());
  put<double>(out, 48, g.dx());
  put<double>(out, 56, g.dy());
  put<double>(out, 64, g.dt());
  put<double>(out, 72, g.dzeta());
  put<double>(out, 80, zeta);
  put<std::uint64_t>(out, 88, g.n_steps());

  std::size_t off = kDumpHeaderSize;
  for (const auto& z : field.values()) {
    if (precision == Precision::single) {
      put<float>(out, off, static_cast<float>(z.real()));
      put<float>(out, off + 4, static_cast<float>(z.imag()));
    } else {
      put<double>(out, off, z.real());
      put<double>(out, off + 8, z.imag());
    }
    off += 2 * bytes;
  }
  return out;
}

FieldDump decode_dump(const std::vector<unsigned char>& in) {
  if (in.size() < kDumpHeaderSize) throw dump_error("truncated header");
  if (std::memcmp(in.data(), kDumpMagic, sizeof kDumpMagic) != 0) throw dump_error("bad magic, not a field dump");
  const auto version = get<std::uint32_t>(in, 8);
  if (version != kDumpVersion)
    throw dump_error("incompatible version " + std::to_string(version) + " (supported: " +
                     std::to_string(kDumpVersion) + ")");
  if (get<std::uint32_t>(in, 12) != kEndianMarker) throw dump_error("endianness does not match this host");
  const auto prec = get<std::uint32_t>(in, 16);
  if (prec != 4 && prec != 8) throw dump_error("invalid precision " + std::to_string(prec));
  std::array<Domain, 3> domains{};
  for (int a = 0; a < 3; ++a) {
    if (in[20 + a] > 1) throw dump_error("invalid domain tag");
    domains[a] = static_cast<Domain>(in[20 + a]);
  }
  const auto nx = get<std::uint64_t>(in, 24), ny = get<std::uint64_t>(in, 32), nt = get<std::uint64_t>(in, 40);
  GridPtr grid;
  try {
    grid = make_grid(nx, ny, nt, get<double>(in, 48), get<double>(in, 56), get<double>(in, 64),
                     get<double>(in, 72), get<std::uint64_t>(in, 88));
  } catch (const Error& e) {
    throw dump_error(std::string("invalid grid metadata: ") + e.what());
  }
  const std::size_t expected = kDumpHeaderSize + 2 * prec * grid->size();
  if (in.size() < expected) throw dump_error("truncated payload");
  if (in.size() > expected) throw dump_error("trailing bytes after payload");

  std::vector<cplx> values(grid->size());
  std::size_t off = kDumpHeaderSize;
  for (auto& z : values) {
    if (prec == 4)
      z = {get<float>(in, off), get<float>(in, off + 4)};
    else
      z = {get<double>(in, off), get<double>(in, off + 8)};
    off += 2 * prec;
  }
  return {ComplexField(grid, std::move(values), domains), get<double>(in, 80), static_cast<Precision>(prec)};
}

void write_dump(const ComplexField& field, const std::string& path, double zeta, Precision precision) {
  const auto bytes = encode_dump(field, zeta, precision);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw dump_error("cannot open '" + path + "' for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw dump_error("write to '" + path + "' failed");
}

FieldDump read_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw dump_error("cannot open '" + path + "' for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_dump(bytes);
}

}  // namespace splitstep
