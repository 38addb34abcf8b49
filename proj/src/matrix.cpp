#include "sheetslice/matrix.hpp"

#include <cctype>

namespace sheetslice {

std::size_t rank(const Matrix<Rat>& m) {
  // clear denominators row by row, then fraction-free elimination over Z
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j) {
      mpz_class d = m(i, j).q().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < C; ++j) {
      mpq_class v = m(i, j).q() * l;
      a[i][j] = v.get_num();
    }
  }
  mpz_class prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t piv = row;
    while (piv < R && a[piv][col] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t i = row + 1; i < R; ++i) {
      for (std::size_t j = col + 1; j < C; ++j) {
        a[i][j] = a[row][col] * a[i][j] - a[i][col] * a[row][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  return row;
}

namespace {

std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> cur;
  std::string tok;
  auto flush_tok = [&] {
    if (!tok.empty()) cur.push_back(tok);
    tok.clear();
  };
  auto flush_row = [&] {
    flush_tok();
    if (!cur.empty()) rows.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ';' || ch == '\n') {
      flush_row();
    } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '[' || ch == ']') {
      flush_tok();
    } else {
      tok += ch;
    }
  }
  flush_row();
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw std::invalid_argument("ragged matrix literal");
  return rows;
}

}  // namespace

Matrix<Rat> parse_matrix_rat(const std::string& text) {
  auto rows = tokenize(text);
  Matrix<Rat> m(rows.size(), rows.empty() ? 0 : rows[0].size(), Rat(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      mpq_class q;
      if (q.set_str(rows[i][j], 10) != 0) throw std::invalid_argument("bad rational entry: " + rows[i][j]);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + rows[i][j]);
      m(i, j) = Rat(q);
    }
  return m;
}

Matrix<Fp> parse_matrix_fp(const std::string& text, std::uint32_t p) {
  auto rows = tokenize(text);
  Matrix<Fp> m(rows.size(), rows.empty() ? 0 : rows[0].size(), Fp(p, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      std::size_t used = 0;
      long long v = std::stoll(rows[i][j], &used);
      if (used != rows[i][j].size()) throw std::invalid_argument("bad F_p entry: " + rows[i][j]);
      m(i, j) = Fp(p, v);
    }
  return m;
}

}  // namespace sheetslice
