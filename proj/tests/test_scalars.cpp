#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "delocx/cyclotomic.hpp"

using namespace delocx;

TEST_CASE("rational parsing and printing round-trips") {
    CHECK(rat_to_string(Rat(3, 2)) == "3/2");
    CHECK(rat_to_string(Rat(-4, 2)) == "-2");
    CHECK(rat_from_string("3/2") == Rat(3, 2));
    CHECK(rat_from_string("-7") == Rat(-7));
    CHECK_THROWS_AS(rat_from_string("1/0"), InputError);
    CHECK_THROWS_AS(rat_from_string("abc"), InputError);
}

TEST_CASE("cyclotomic polynomials") {
    using detail::cyclotomic_polynomial;
    CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
    // Phi_12 = x^4 - x^2 + 1
    CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic field arithmetic") {
    auto z4 = Cyclotomic::zeta(4);           // i
    CHECK(z4 * z4 == Cyclotomic(Rat(-1)));
    CHECK((z4 * z4 * z4 * z4) == Cyclotomic(Rat(1)));

    auto z3 = Cyclotomic::zeta(3);
    // 1 + z3 + z3^2 = 0
    CHECK((Cyclotomic(1) + z3 + z3 * z3).is_zero());

    // mixed conductors promote: z6^3 = -1 = z2
    auto z6 = Cyclotomic::zeta(6);
    CHECK(z6 * z6 * z6 == Cyclotomic(Rat(-1)));
    CHECK(z6 * z6 * z6 == Cyclotomic::zeta(2));

    // inverse
    auto a = Cyclotomic(2) + Cyclotomic::zeta(5, 2) * Rat(3);
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK_THROWS(Cyclotomic(Rat(0)).inverse());

    CHECK(Cyclotomic(Rat(5, 3)).is_rational());
    CHECK_FALSE(z4.is_rational());
    CHECK(Cyclotomic(Rat(5, 3)).to_rational() == Rat(5, 3));
}

TEST_CASE("cyclotomic field axioms on random elements") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int conductor : {3, 4, 5, 6, 8, 12}) {
        int degree = static_cast<int>(detail::cyclotomic_polynomial(conductor).size()) - 1;
        auto random_elem = [&] {
            std::vector<Rat> c(degree);
            for (auto& v : c) v = Rat(coef(rng), 1 + static_cast<int>(rng() % 2));
            return Cyclotomic::from_coeffs(conductor, c);
        };
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_elem(), b = random_elem(), c = random_elem();
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
        }
        // zeta_N has multiplicative order N
        auto z = Cyclotomic::zeta(conductor);
        Cyclotomic power(1);
        for (int k = 1; k < conductor; ++k) {
            power *= z;
            CHECK(power != Cyclotomic(1));
        }
        CHECK(power * z == Cyclotomic(1));
    }
}

TEST_CASE("cyclotomic canonical printing") {
    CHECK(Cyclotomic(Rat(0)).to_string() == "0");
    CHECK(Cyclotomic(Rat(-3, 2)).to_string() == "-3/2");
    auto z = Cyclotomic::zeta(5);
    CHECK((Cyclotomic(1) + z * Rat(2) - z * z).to_string() == "1 + 2*z - z^2");
}
