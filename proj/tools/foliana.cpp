#include <cstdio>

int main() {
    std::puts("foliana: CLI under construction");
    return 0;
}
