#include "evote/encoding.hpp"

#include <algorithm>
#include <sstream>

#include "evote/error.hpp"

namespace evote {
namespace {

void append(Bytes& out, std::string_view text) { out.insert(out.end(), text.begin(), text.end()); }

void append_pairing_line(Bytes& out, const Pairing& p) {
  append(out, p.choice);
  out.push_back('\t');
  append(out, p.id.digits());
}

std::size_t label_width(const std::vector<std::string>& labels) {
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.size());
  return width;
}

std::string padded(std::string_view label, std::size_t width) {
  std::string out(label);
  out.append(width - label.size(), ' ');
  return out;
}

void write_header(std::ostream& os, const ElectionHeader& h) {
  os << h.title << '\n' << h.date << '\n' << h.precinct << '\n';
}

}  // namespace

Bytes canonical_receipt_bytes(const ReceiptBody& body) {
  Bytes out;
  append(out, body.header.title);
  out.push_back('\n');
  append(out, body.header.date);
  out.push_back('\n');
  append(out, body.header.precinct);
  for (const auto& p : body.pairings) {
    out.push_back('\n');
    append_pairing_line(out, p);
  }
  return out;
}

Bytes canonical_batch_bytes(std::span<const Pairing> entries) {
  Bytes out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i != 0) out.push_back('\n');
    append_pairing_line(out, entries[i]);
  }
  return out;
}

std::vector<Pairing> parse_batch_bytes(ByteView bytes) {
  std::vector<Pairing> out;
  if (bytes.empty()) return out;
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ParseError("batch line lacks 'label<TAB>id': '" + std::string(line) + "'");
    }
    out.push_back({std::string(line.substr(0, tab)), VoterId::parse(line.substr(tab + 1))});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string base32_encode(ByteView bytes) {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";
  std::string out;
  out.reserve((bytes.size() * 8 + 4) / 5);
  std::uint32_t buffer = 0;
  int bits = 0;
  for (std::uint8_t b : bytes) {
    buffer = (buffer << 8) | b;
    bits += 8;
    while (bits >= 5) {
      out.push_back(kAlphabet[(buffer >> (bits - 5)) & 0x1f]);
      bits -= 5;
    }
  }
  if (bits > 0) out.push_back(kAlphabet[(buffer << (5 - bits)) & 0x1f]);
  return out;
}

std::vector<std::string> wrap_fixed(std::string_view text, std::size_t width) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < text.size(); i += width) {
    lines.emplace_back(text.substr(i, width));
  }
  return lines;
}

std::string render_receipt_text(const Receipt& receipt) {
  const auto& body = receipt.body;
  std::vector<std::string> labels;
  for (const auto& p : body.pairings) labels.push_back(p.choice);
  const std::size_t width = label_width(labels);

  std::ostringstream os;
  write_header(os, body.header);
  os << '\n';
  for (const auto& p : body.pairings) os << padded(p.choice, width) << "  " << p.id.digits() << '\n';
  os << "\nSignature:\n";
  for (const auto& line : wrap_fixed(base32_encode(receipt.signature.bytes), kSignatureLineWidth)) {
    os << line << '\n';
  }
  return os.str();
}

std::string render_board_text(const Board& board, const Results& results) {
  const std::size_t width = label_width(board.candidates());

  std::ostringstream os;
  write_header(os, board.header());
  os << "\nVotes:\n";
  // Entries are already grouped in ballot order with ascending ids.
  const std::string* group = nullptr;
  for (const auto& e : board.entries()) {
    if (group == nullptr || *group != e.choice) {
      os << '\n';
      group = &e.choice;
    }
    os << padded(e.choice, width) << "  " << e.id.digits() << '\n';
  }

  std::size_t count_width = 1;
  for (const auto& c : results.candidates) {
    count_width = std::max(count_width, std::to_string(c.final_count).size());
  }
  os << "\nResults:\n\n";
  for (const auto& c : results.candidates) {
    const std::string count = std::to_string(c.final_count);
    os << padded(c.choice, width) << "  " << std::string(count_width - count.size(), ' ') << count
       << '\n';
  }
  os << "\nSignings: " << board.signings_count() << '\n';
  return os.str();
}

}  // namespace evote
