#include "ncaudit/wire.hpp"

#include <algorithm>
#include <string>

namespace ncaudit::wire {
namespace {

void read_block_into(ByteReader& in, CodedBlock& out) {
  const auto magic = in.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kBlockMagic.begin())) throw WireError("block: bad magic");
  if (in.u8() != kBlockVersion) throw WireError("block: unsupported version");
  const std::uint32_t n = in.u32();
  const std::uint32_t m = in.u32();
  if (n < 4) throw WireError("block: n < 4");
  const auto sym = in.bytes(std::size_t{n} + m);
  out = CodedBlock(SymbolVector(sym.begin(), sym.end()), n);
}

}  // namespace

Bytes encode_block(const CodedBlock& block) {
  ByteWriter w;
  w.bytes(kBlockMagic);
  w.u8(kBlockVersion);
  w.u32(static_cast<std::uint32_t>(block.n()));
  w.u32(static_cast<std::uint32_t>(block.m()));
  w.bytes(block.symbols());
  return w.take();
}

CodedBlock decode_block(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  CodedBlock b;
  read_block_into(in, b);
  in.expect_end();
  return b;
}

Bytes encode_tag(const TagVector& tag) { return tag.values; }

TagVector decode_tag(std::span<const std::uint8_t> bytes, std::size_t ell) {
  if (bytes.size() != ell) throw WireError("tag: expected " + std::to_string(ell) + " bytes");
  return TagVector(SymbolVector(bytes.begin(), bytes.end()));
}

Bytes encode_challenge(const Challenge& chal) {
  ByteWriter w;
  w.prefixed(chal.file_id);
  w.u32(static_cast<std::uint32_t>(chal.entries.size()));
  for (const auto& e : chal.entries) {
    w.u32(e.index + 1);
    w.u8(e.alpha);
  }
  return w.take();
}

Challenge decode_challenge(std::span<const std::uint8_t> bytes, std::uint32_t node) {
  ByteReader in(bytes);
  Challenge chal;
  chal.node = node;
  chal.file_id = in.prefixed_string();
  const std::uint32_t count = in.u32();
  if (count == 0) throw WireError("challenge: no entries");
  if (count > in.remaining() / 5) throw WireError("challenge: count exceeds message");
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t idx = in.u32();
    if (idx == 0) throw WireError("challenge: indices are 1-based");
    chal.entries.push_back({idx - 1, in.u8()});
  }
  in.expect_end();
  for (std::size_t k = 1; k < chal.entries.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (chal.entries[j].index == chal.entries[k].index) throw WireError("challenge: duplicate index");
    }
  }
  return chal;
}

Bytes encode_ciphertext(const Ciphertext& ct) {
  ByteWriter w;
  w.bytes(ct.c_bar);
  w.bytes(ct.nonce);
  w.bytes(ct.p);
  return w.take();
}

namespace {
Ciphertext read_ciphertext(ByteReader& in, const SystemParams& params) {
  Ciphertext ct;
  const auto c = in.bytes(params.n - 2);
  const auto nonce = in.bytes(params.lambda_bits / 8);
  const auto p = in.bytes(params.ell);
  ct.c_bar.assign(c.begin(), c.end());
  ct.nonce.assign(nonce.begin(), nonce.end());
  ct.p.assign(p.begin(), p.end());
  return ct;
}
}  // namespace

Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes, const SystemParams& params) {
  ByteReader in(bytes);
  auto ct = read_ciphertext(in, params);
  in.expect_end();
  return ct;
}

Bytes encode_proof(const Proof& proof) {
  Bytes out = encode_ciphertext(proof.ct);
  out.push_back(proof.pad[0]);
  out.push_back(proof.pad[1]);
  out.insert(out.end(), proof.tag.values.begin(), proof.tag.values.end());
  return out;
}

Proof decode_proof(std::span<const std::uint8_t> bytes, const SystemParams& params) {
  ByteReader in(bytes);
  Proof proof;
  proof.ct = read_ciphertext(in, params);
  proof.pad[0] = in.u8();
  proof.pad[1] = in.u8();
  const auto t = in.bytes(params.ell);
  proof.tag = TagVector(SymbolVector(t.begin(), t.end()));
  in.expect_end();
  return proof;
}

Bytes encode_aux(const AuxiliaryElements& aux) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(aux.n));
  w.u32(static_cast<std::uint32_t>(aux.ell()));
  for (const auto& row : aux.basis) w.bytes(row);
  for (const auto& row : aux.scalars) w.bytes(row);
  return w.take();
}

AuxiliaryElements decode_aux(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  AuxiliaryElements aux;
  aux.n = in.u32();
  const std::uint32_t ell = in.u32();
  if (aux.n < 4) throw WireError("aux: n < 4");
  for (std::size_t i = 0; i + 1 < aux.n; ++i) {
    const auto row = in.bytes(aux.n - 2);
    aux.basis.emplace_back(row.begin(), row.end());
  }
  for (std::uint32_t j = 0; j < ell; ++j) {
    const auto row = in.bytes(aux.n - 1);
    aux.scalars.emplace_back(row.begin(), row.end());
  }
  in.expect_end();
  return aux;
}

Bytes encode_rows(std::span<const SymbolVector> rows) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(rows.size()));
  w.u32(rows.empty() ? 0 : static_cast<std::uint32_t>(rows.front().size()));
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw WireError("rows: ragged table");
    w.bytes(r);
  }
  return w.take();
}

std::vector<SymbolVector> decode_rows(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const std::uint32_t count = in.u32();
  const std::uint32_t len = in.u32();
  if (len != 0 && count > in.remaining() / len) throw WireError("rows: count exceeds message");
  std::vector<SymbolVector> rows;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto r = in.bytes(len);
    rows.emplace_back(r.begin(), r.end());
  }
  in.expect_end();
  return rows;
}

Bytes encode_repair(const RepairMessage& msg) {
  ByteWriter w;
  w.u32(msg.helper);
  w.u32(msg.j);
  w.bytes(encode_block(msg.block));
  w.bytes(msg.tag.values);
  return w.take();
}

RepairMessage decode_repair(std::span<const std::uint8_t> bytes, std::size_t ell) {
  ByteReader in(bytes);
  RepairMessage msg;
  msg.helper = in.u32();
  msg.j = in.u32();
  read_block_into(in, msg.block);
  const auto t = in.bytes(ell);
  msg.tag = TagVector(SymbolVector(t.begin(), t.end()));
  in.expect_end();
  return msg;
}

}  // namespace ncaudit::wire
