#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "support/test_util.hpp"

int main(int argc, char** argv) {
    std::vector<char*> passthrough;
    passthrough.reserve(argc);
    for (int i = 0; i < argc; ++i) {
        if (std::strncmp(argv[i], "--bin=", 6) == 0) {
            testutil::set_cli_binary(argv[i] + 6);
            continue;
        }
        passthrough.push_back(argv[i]);
    }
    doctest::Context context(static_cast<int>(passthrough.size()), passthrough.data());
    return context.run();
}
