#include <cstdio>

int main() {
    std::puts("solvform: subcommands arrive with the full build");
    return 0;
}
