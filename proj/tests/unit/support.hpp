#ifndef HGO_TEST_SUPPORT_HPP
#define HGO_TEST_SUPPORT_HPP

#include "hgo/linalg.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string read_fixture(const std::string& name) {
    std::ifstream f(std::string(HGO_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Non-comment, non-empty lines.
inline std::vector<std::string> fixture_lines(const std::string& name) {
    std::vector<std::string> out;
    std::istringstream in(read_fixture(name));
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

// Plain triple-loop product, independent of RatMatrix::operator*.
inline hgo::RatMatrix naive_mul(const hgo::RatMatrix& a, const hgo::RatMatrix& b) {
    hgo::RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            hgo::Rational acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

inline hgo::Rational dot(const hgo::RatVec& x, const hgo::RatVec& y) {
    hgo::Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace testsupport

#endif
