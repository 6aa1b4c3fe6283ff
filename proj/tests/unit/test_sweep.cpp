#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gkkm/sweep.hpp"

using namespace gkkm;

TEST_SUITE_BEGIN("sweep");

TEST_CASE("parallel map reproduces the serial reference bit for bit") {
    auto work = [](std::size_t i) {
        double acc = 0;
        for (int k = 1; k <= 2000; ++k)
            acc += std::sin(0.001 * k * (i + 1)) / std::sqrt(double(k));
        return acc;
    };
    const auto a = serial_map<double>(257, work);
    const auto b = parallel_map<double>(257, work, 0);
    const auto c = parallel_map<double>(257, work, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i] == c[i]);
    }
}

TEST_CASE("threads = 1 is the serial reference") {
    int order_breaks = 0;
    std::size_t last = 0;
    auto work = [&](std::size_t i) {
        if (i < last) ++order_breaks;
        last = i;
        return static_cast<int>(i);
    };
    parallel_map<int>(64, work, 1);
    CHECK(order_breaks == 0);
}

TEST_CASE("the first exception by index is rethrown") {
    auto work = [](std::size_t i) -> int {
        if (i == 17 || i == 40) throw std::runtime_error("item " + std::to_string(i));
        return static_cast<int>(i);
    };
    try {
        parallel_map<int>(64, work, 0);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "item 17");
    }
}

TEST_SUITE_END();
