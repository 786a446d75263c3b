// Fibonacci model set: Z[phi] points in [-range, range] whose conjugate lies
// in [-1, 1]. Prints the gap alphabet and a covering certificate for S*S.
#include "apg/cutproject/model_set.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    using namespace apg;
    const long long range = argc > 1 ? std::atoll(argv[1]) : 30;
    auto m = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(range));
    std::cout << m.size() << " points in [-" << range << ", " << range << "]\n";

    const Rational interior(range / 2);
    std::cout << "gaps inside [-" << interior.str() << ", " << interior.str() << "]:";
    for (const auto& g : gap_alphabet(m.points, interior)) std::cout << "  " << g.str();
    std::cout << "\n";

    auto cert = verify_approximate_subgroup(m.points);
    std::cout << "S*S covered by " << cert.translates.size() << " translates of S:";
    for (const auto& f : cert.translates) std::cout << "  " << f.str();
    std::cout << "\n";
}
