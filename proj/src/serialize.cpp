#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <string>

#include "tracefn/trace_function.hpp"

namespace tracefn {
namespace {

constexpr std::array<char, 4> kMagic = {'T', 'F', 'N', '1'};
constexpr u32 kFlagReal = 1u << 0;
constexpr u32 kFlagPrimeField = 1u << 1;
constexpr u32 kMaxFamilyLength = 1u << 16;

template <class U>
void put_le(std::ostream& out, U v) {
  char buf[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, sizeof(U));
}

template <class U>
U get_le(std::istream& in) {
  unsigned char buf[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(U))) throw InvalidArgument("TFN1: truncated stream");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void write_tfn(std::ostream& out, const TraceFunction& k) {
  out.write(kMagic.data(), kMagic.size());
  put_le<u64>(out, k.modulus());
  u32 flags = 0;
  if (k.meta().real_valued) flags |= kFlagReal;
  if (k.has_field()) flags |= kFlagPrimeField;
  put_le<u32>(out, flags);
  const std::string& fam = k.meta().family;
  if (fam.size() > kMaxFamilyLength) throw InvalidArgument("TFN1: family name too long");
  put_le<u32>(out, static_cast<u32>(fam.size()));
  out.write(fam.data(), static_cast<std::streamsize>(fam.size()));
  for (const cplx& z : k.values()) {
    put_le<u64>(out, std::bit_cast<u64>(z.real()));
    put_le<u64>(out, std::bit_cast<u64>(z.imag()));
  }
  if (!out) throw Error("TFN1: write failed");
}

TraceFunction read_tfn(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw InvalidArgument("TFN1: bad magic");
  const u64 q = get_le<u64>(in);
  const u32 flags = get_le<u32>(in);
  const u32 len = get_le<u32>(in);
  if (len > kMaxFamilyLength) throw InvalidArgument("TFN1: family name too long");
  if (q == 0 || q > PrimeModulus::kMaxTableModulus) throw CapacityError("TFN1: modulus out of range");
  std::string fam(len, '\0');
  if (len > 0 && !in.read(fam.data(), len)) throw InvalidArgument("TFN1: truncated family name");

  std::vector<cplx> values(q);
  for (auto& z : values) {
    const double re = std::bit_cast<double>(get_le<u64>(in));
    const double im = std::bit_cast<double>(get_le<u64>(in));
    z = {re, im};
  }
  TraceMeta meta;
  meta.family = fam;
  meta.real_valued = (flags & kFlagReal) != 0;
  if (flags & kFlagPrimeField) return TraceFunction(PrimeModulus(q), std::move(values), std::move(meta));
  return TraceFunction(q, std::move(values), std::move(meta));
}

}  // namespace tracefn
