#include "oac/partitions.hpp"

#include "oac/error.hpp"

namespace oac {

std::vector<SetPartition> set_partitions(std::size_t n) {
  if (n > 12) throw CapExceeded("refusing to enumerate the partitions of more than 12 points");
  std::vector<SetPartition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // a[i] <= 1 + max(a[0..i-1]), a[0] = 0
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  for (;;) {
    SetPartition p(prefix_max[n - 1] + 1);
    for (std::size_t i = 0; i < n; ++i) p[a[i]].push_back(i);
    out.push_back(std::move(p));

    std::size_t i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) throw CapExceeded("Bell number overflows 64 bits beyond n = 25");
  std::vector<std::uint64_t> row{1};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace oac
