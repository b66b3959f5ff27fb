/* Small numeric helpers, written once per language for parity checks. */

int clamp(int value, int low, int high)
{
    if (value < low) {
        return low;
    }
    if (value > high) {
        return high;
    }
    return value;
}

int sumPositive(const int *values, int count)
{
    int total = 0;
    for (int i = 0; i < count; i++) {
        if (values[i] > 0) {
            total = total + values[i];
        }
    }
    return total;
}

int classify(int score, int bonus)
{
    if (score > 90 && bonus > 0) {
        return 3;
    } else if (score > 70 || bonus > 5) {
        return 2;
    } else if (score > 50) {
        return 1;
    }
    return 0;
}

int countMatches(const int *left, const int *right, int count, int tolerance)
{
    int matches = 0;
    int i = 0;
    while (i < count) {
        int delta = left[i] - right[i];
        if (delta < tolerance && delta > 0 - tolerance) {
            matches = matches + 1;
        }
        i = i + 1;
    }
    return matches;
}

int countNear(const int *left, const int *right, int count, int tolerance)
{
    int matches = 0;
    int i = 0;
    while (i < count) {
        int delta = left[i] - right[i];
        if (delta < tolerance && delta > 0 - tolerance) {
            matches = matches + 1;
        }
        i = i + 1;
    }
    return matches;
}
