#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "mdiew/matrix.hpp"

int main(int argc, char** argv) {
    // Tiny negative probability clamps are expected in randomized suites;
    // keep the test log readable.
    mdiew::set_warning_handler([](const std::string&) {});
    doctest::Context context(argc, argv);
    return context.run();
}
