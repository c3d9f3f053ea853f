#include "qsmooth/order.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qsmooth::poly {
namespace {

kernels::ExpVec masked(const kernels::ExpVec& v, std::size_t begin, std::size_t end) {
  kernels::ExpVec out;
  for (std::size_t i = begin; i < end && i < kMaxVars; ++i) out.e[i] = v.e[i];
  return out;
}

}  // namespace

MonomialOrder MonomialOrder::with_permutation(std::vector<std::size_t> order) const {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() > kMaxVars)
      throw std::invalid_argument("variable order is not a permutation");
  MonomialOrder out = *this;
  bool identity = true;
  for (std::size_t i = 0; i < order.size(); ++i) identity = identity && order[i] == i;
  out.perm_ = identity ? std::vector<std::size_t>{} : std::move(order);
  return out;
}

int MonomialOrder::compare_identity(const kernels::ExpVec& a, const kernels::ExpVec& b) const {
  const auto& k = kernels::active();
  switch (kind_) {
    case Kind::GradedReverseLex:
      return k.cmp_grevlex(a, b);
    case Kind::Lex:
      return k.cmp_lex(a, b);
    case Kind::BlockElimination: {
      const int head = k.cmp_grevlex(masked(a, 0, block_), masked(b, 0, block_));
      if (head != 0) return head;
      return k.cmp_grevlex(masked(a, block_, kMaxVars), masked(b, block_, kMaxVars));
    }
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (perm_.empty()) return compare_identity(a.raw(), b.raw());
  kernels::ExpVec pa, pb;
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    pa.e[i] = a.raw().e[perm_[i]];
    pb.e[i] = b.raw().e[perm_[i]];
  }
  return compare_identity(pa, pb);
}

std::string MonomialOrder::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::GradedReverseLex:
      out = "grevlex";
      break;
    case Kind::Lex:
      out = "lex";
      break;
    case Kind::BlockElimination:
      out = "elim(" + std::to_string(block_) + ")";
      break;
  }
  if (!perm_.empty()) {
    out += '[';
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(perm_[i]);
    }
    out += ']';
  }
  return out;
}

MonomialOrder MonomialOrder::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("bad monomial order: " + std::string(text)); };
  std::string_view head = text;
  std::string_view tail;
  if (auto br = text.find('['); br != std::string_view::npos) {
    if (text.back() != ']') fail();
    head = text.substr(0, br);
    tail = text.substr(br + 1, text.size() - br - 2);
  }
  MonomialOrder order;
  if (head == "grevlex") {
    order = grevlex();
  } else if (head == "lex") {
    order = lex();
  } else if (head.starts_with("elim(") && head.ends_with(")")) {
    std::size_t k = 0;
    auto body = head.substr(5, head.size() - 6);
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (ec != std::errc() || p != body.data() + body.size()) fail();
    order = elimination(k);
  } else {
    fail();
  }
  if (!tail.empty()) {
    std::vector<std::size_t> perm;
    std::size_t pos = 0;
    while (pos <= tail.size()) {
      auto comma = tail.find(',', pos);
      if (comma == std::string_view::npos) comma = tail.size();
      std::size_t v = 0;
      auto part = tail.substr(pos, comma - pos);
      auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || p != part.data() + part.size()) fail();
      perm.push_back(v);
      pos = comma + 1;
    }
    order = order.with_permutation(std::move(perm));
  }
  return order;
}

}  // namespace qsmooth::poly
